"""Command-line front end.

    fastpers triangle.flt --algorithm lazy --representatives both
    fastpers triangle.flt --cohomology --verify --count-ops
    fastpers --bench 128,256,512 --algorithm fast-column --seed 3

The diagram goes to stdout as ``dim<TAB>birth<TAB>death`` rows sorted by
``(dim, birth, death)``, with ``inf`` for classes that never die.
Diagnostics go to stderr.  Exit status: 0 on success, 1 when ``--verify``
finds a failed check, 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .field import FieldContext, NotPrime
from .filtration import FiltrationError, boundary_matrix, read_filtration
from .generate import random_filtration
from .matrix import DEFAULT_CUTOFF, OpCounter
from .persistence import (Chain, PersistencePair, RepresentativeSet, extract_cocycles,
                          extract_diagram, extract_r_representatives,
                          extract_v_representatives, verify_decomposition)
from .reductions import ALGORITHMS, reduce

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    input: Optional[str] = None
    algorithm: str = "fast-row"
    p: int = 2
    side: str = "homology"
    representatives: str = "none"
    verify: bool = False
    count_ops: bool = False
    leaf_size: int = 32
    strassen_cutoff: int = DEFAULT_CUTOFF
    seed: int = 0

    def validate(self) -> FieldContext:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.leaf_size < 1:
            raise ValueError("leaf size must be at least 1")
        if self.strassen_cutoff < 1:
            raise ValueError("Strassen cutoff must be at least 1")
        if self.side == "cohomology" and self.representatives in ("r", "both"):
            raise ValueError("r-basis representatives are only defined for homology")
        return FieldContext(self.p)


def format_pair(pr: PersistencePair) -> str:
    death = "inf" if pr.death is None else str(pr.death)
    return f"{pr.dim}\t{pr.birth}\t{death}"


def format_rep(birth: int, death: Optional[int], chain: Chain) -> str:
    terms = " ".join(f"{i}*{c}" for i, c in chain.coefficients.items())
    return f"rep {birth} {'inf' if death is None else death} : {terms}"


def _rep_lines(reps: RepresentativeSet) -> list[str]:
    lines = []
    for birth, chain in sorted(reps.v_basis.items()):
        lines.append(format_rep(birth, reps.pivots.get(birth), chain))
    for death, chain in sorted(reps.r_basis.items()):
        lines.append(format_rep(reps.pivots[death], death, chain))
    return lines


def run(cfg: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        field = cfg.validate()
        F = read_filtration(cfg.input)
    except NotPrime as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except FiltrationError as exc:
        print(f"error: {cfg.input}: {exc}", file=err)
        return EXIT_INPUT
    except (OSError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT

    Dm = boundary_matrix(F, field)
    counter = OpCounter()
    kw = dict(field=field, leaf_size=cfg.leaf_size, cutoff=cfg.strassen_cutoff, counter=counter)
    lines: list[str] = []
    if cfg.side == "cohomology":
        diagram, cocycles = extract_cocycles(Dm, cfg.algorithm, **kw)
        checked = (Dm.antitransposed(), None)
        if cfg.representatives == "v":
            lines += _rep_lines(cocycles)
    else:
        dec = reduce(Dm, cfg.algorithm, **kw)
        diagram = extract_diagram(dec, Dm.dims)
        checked = (Dm, dec)
        if cfg.representatives in ("v", "both"):
            lines += _rep_lines(extract_v_representatives(dec, Dm.dims))
        if cfg.representatives in ("r", "both"):
            lines += _rep_lines(extract_r_representatives(dec, Dm.dims))

    for pr in diagram:
        print(format_pair(pr), file=out)
    for line in lines:
        print(line, file=out)
    if cfg.count_ops:
        c = counter.as_dict()
        print(f"ops: mul={c['mul']} add={c['add']} inv={c['inv']}", file=out)

    if cfg.verify:
        target, dec = checked
        if dec is None:
            dec = reduce(target, cfg.algorithm, field=field, leaf_size=cfg.leaf_size,
                         cutoff=cfg.strassen_cutoff)
        report = verify_decomposition(target, dec)
        print(report, file=err)
        if not report.ok:
            print(f"verification failed: {', '.join(report.failed)}", file=err)
            return EXIT_VERIFY
    return EXIT_OK


def bench(cfg: RunConfig, sizes: Sequence[int], out: Optional[TextIO] = None) -> list[dict]:
    """Op counts and wall time of ``cfg.algorithm`` on seeded random filtrations."""
    out = out or sys.stdout
    field = cfg.validate()
    print(f"# seed={cfg.seed} algorithm={cfg.algorithm} p={field.p} "
          f"leaf_size={cfg.leaf_size} strassen_cutoff={cfg.strassen_cutoff}", file=out)
    print("n\tmul\tadd\tinv\tseconds", file=out)
    rows = []
    for n in sizes:
        Dm = boundary_matrix(random_filtration(n, seed=cfg.seed), field)
        counter = OpCounter()
        t0 = time.perf_counter()
        reduce(Dm, cfg.algorithm, field=field, leaf_size=cfg.leaf_size,
               cutoff=cfg.strassen_cutoff, counter=counter)
        elapsed = time.perf_counter() - t0
        row = dict(n=n, **counter.as_dict(), seconds=elapsed)
        rows.append(row)
        print(f"{n}\t{row['mul']}\t{row['add']}\t{row['inv']}\t{elapsed:.3f}", file=out)
    for a, b in zip(rows, rows[1:]):
        ratio = b["mul"] / a["mul"] if a["mul"] else float("inf")
        print(f"ratio mul({b['n']})/mul({a['n']}) = {ratio:.3f}", file=out)
    return rows


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated sizes, got {text!r}") from None
    if not sizes or any(n < 1 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fastpers",
                                 description="Persistence diagrams from filtration files.")
    ap.add_argument("input", nargs="?", help="filtration file (.flt)")
    ap.add_argument("--algorithm", choices=ALGORITHMS, default="fast-row")
    ap.add_argument("--field", type=int, default=2, metavar="P", help="prime modulus (default 2)")
    ap.add_argument("--cohomology", action="store_true",
                    help="reduce the anti-transposed matrix and report cocycles")
    ap.add_argument("--representatives", choices=("none", "v", "r", "both"), default="none")
    ap.add_argument("--verify", action="store_true", help="check the decomposition invariants")
    ap.add_argument("--count-ops", action="store_true", help="print field operation tallies")
    ap.add_argument("--leaf-size", type=int, default=32)
    ap.add_argument("--strassen-cutoff", type=int, default=DEFAULT_CUTOFF)
    ap.add_argument("--bench", type=_sizes, metavar="N1,N2,...",
                    help="benchmark on seeded random filtrations of these sizes")
    ap.add_argument("--seed", type=int, default=0)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = RunConfig(input=args.input, algorithm=args.algorithm, p=args.field,
                    side="cohomology" if args.cohomology else "homology",
                    representatives=args.representatives, verify=args.verify,
                    count_ops=args.count_ops, leaf_size=args.leaf_size,
                    strassen_cutoff=args.strassen_cutoff, seed=args.seed)
    if args.bench:
        try:
            bench(cfg, args.bench)
        except (NotPrime, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        return EXIT_OK
    if cfg.input is None:
        ap.print_usage(sys.stderr)
        print("error: an input file is required unless --bench is given", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
