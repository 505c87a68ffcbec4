"""Graded polynomial identities of finite-dimensional G-graded algebras."""
