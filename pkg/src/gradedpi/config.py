"""Run settings shared by the experiment scripts."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    threads: int = 1
    tuple_cap: int = 10**7
    id_space_cap: int = 4
    samples: int = 100
    out_dir: str = "results"
    experiments: tuple[str, ...] = field(default_factory=tuple)

    def apply(self):
        """Push the settings into the process environment and module caps."""
        from . import checker
        os.environ["GRADEDPI_THREADS"] = str(self.threads)
        checker.TUPLE_CAP = self.tuple_cap
        checker.ID_SPACE_CAP = self.id_space_cap

    def to_json(self) -> dict:
        d = asdict(self)
        d["experiments"] = list(self.experiments)
        return d
