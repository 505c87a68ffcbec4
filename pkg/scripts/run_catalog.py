"""Run the bundled experiment catalog and write one JSON report per entry."""
import argparse
import json
import pathlib
import sys

from gradedpi import experiments
from gradedpi.config import RunConfig


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("names", nargs="*", help="catalog entries (default: all)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default="results")
    a = p.parse_args(argv)
    cfg = RunConfig(seed=a.seed, threads=a.threads, out_dir=a.out_dir, experiments=tuple(a.names))
    cfg.apply()
    out = pathlib.Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = cfg.experiments or tuple(experiments.catalog())
    failed = 0
    for name in names:
        rep = experiments.run(name, cfg.seed)
        (out / f"{name}.json").write_text(json.dumps(rep, sort_keys=True, indent=1) + "\n", encoding="utf-8")
        print(f"{name:24s} {rep['verdict']:5s} {rep['runtime_ms']:8d} ms")
        failed += rep["verdict"] != "pass"
    (out / "config.json").write_text(json.dumps(cfg.to_json(), indent=1) + "\n", encoding="utf-8")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
