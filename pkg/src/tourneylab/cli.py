"""Command-line front end: generate families, run estimation sweeps, exact
enumeration, structural analysis, and certificate verification.

Sweeps are configured by a single JSON document so they can be archived
and replayed; command-line flags override individual fields. Reports
embed the master seed and artifact version, and everything runs offline.

Exit codes: 0 success; 2 bad parameters or configuration; 3 I/O failure;
4 malformed tournament input; 5 certificate failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .core import Tournament, read_trn1, semidegrees, write_trn1
from .errors import (BadConfig, BadParams, DiagonalNonzero, EmptyPart,
                     InvalidCertificate, PairViolation, SubsetOutOfRange,
                     TooLarge, Trn1ParseError)
from .generators import ExtremalSpec
from .hamilton import HamiltonCertificate, check_certificate, is_hamiltonian
from .sampling import (SamplePlan, estimate_hamiltonian_probability,
                       exact_hamiltonian_probability, theoretical_bound)
from .structure import (balanced_cut_search, clean_to_good_partition,
                        default_connector_k, k_connectors, max_BA_matching,
                        refine_partition)

EXIT_OK = 0
EXIT_BAD_PARAMS = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_CERTIFICATE = 5


@dataclass
class ExperimentConfig:
    """One estimation sweep: a tournament source, p values, and trial budget."""

    p_values: list[float]
    t: int = 1
    trials: int = 10000
    master_seed: int = 0
    family: str | None = None
    params: dict = field(default_factory=dict)
    seed: int | None = None
    tournament_path: str | None = None
    output_path: str | None = None

    def __post_init__(self):
        if not self.p_values:
            raise BadConfig("config needs at least one p value")
        for p in self.p_values:
            if not 0.0 < p < 1.0:
                raise BadConfig(f"p values must be in (0,1), got {p}")
        if self.trials < 1:
            raise BadConfig(f"trials must be >= 1, got {self.trials}")
        if self.t < 1:
            raise BadConfig(f"t must be >= 1, got {self.t}")
        if (self.family is None) == (self.tournament_path is None):
            raise BadConfig("config needs exactly one of 'family' or 'tournament_path'")

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExperimentConfig":
        known = {"p_values", "t", "trials", "master_seed", "family", "params",
                 "seed", "tournament_path", "output_path"}
        unknown = set(data) - known
        if unknown:
            raise BadConfig(f"unknown config fields: {sorted(unknown)}")
        if "p_values" not in data:
            raise BadConfig("config is missing 'p_values'")
        return cls(**data)

    def to_json_dict(self) -> dict:
        return {
            "p_values": self.p_values, "t": self.t, "trials": self.trials,
            "master_seed": self.master_seed, "family": self.family,
            "params": self.params, "seed": self.seed,
            "tournament_path": self.tournament_path, "output_path": self.output_path,
        }

    def load_tournament(self) -> Tournament:
        if self.tournament_path is not None:
            return read_trn1(self.tournament_path)
        return ExtremalSpec(self.family, self.params, self.seed).build()


def run_sweep(config: ExperimentConfig, threads: int | None = None) -> dict:
    """Execute the sweep and return the SweepReport as a plain dict."""
    T = config.load_tournament()
    rows = []
    for p in config.p_values:
        plan = SamplePlan(p=p, trials=config.trials, master_seed=config.master_seed)
        est = estimate_hamiltonian_probability(T, plan, threads=threads)
        bound = theoretical_bound(T.n, config.t, p)
        row = est.to_json_dict()
        row["bound"] = bound.bound_value
        row["improved"] = bound.improved
        row["gap"] = est.point_estimate - bound.bound_value
        rows.append(row)
    echo = config.to_json_dict()
    echo.pop("output_path")  # where the report lands is not part of the experiment
    return {
        "artifact_version": __version__,
        "config": echo,
        "n": T.n,
        "rows": rows,
    }


def write_sweep_report(report: dict, base_path: str) -> tuple[str, str]:
    json_path = base_path + ".json"
    csv_path = base_path + ".csv"
    with open(json_path, "w", encoding="ascii") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(csv_path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p", "estimate", "ci_low", "ci_high", "bound", "gap"])
        for row in report["rows"]:
            writer.writerow([repr(row[c]) for c in
                             ("p", "estimate", "ci_low", "ci_high", "bound", "gap")])
    return json_path, csv_path


def _gen_spec(args) -> ExtremalSpec:
    params: dict = {}
    for name in ("k", "m", "n", "t"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    return ExtremalSpec(args.family, params, args.seed)


def _cmd_gen(args) -> int:
    T = _gen_spec(args).build()
    write_trn1(T, args.out)
    prof = semidegrees(T)
    print(f"wrote {args.out}: n={T.n} min_semidegree={prof.min_semidegree}")
    return EXIT_OK


def _cmd_estimate(args) -> int:
    if args.config is not None:
        with open(args.config, "r", encoding="ascii") as fh:
            data = json.load(fh)
    else:
        data = {"p_values": []}
    if args.p:
        data["p_values"] = args.p
    if args.trials is not None:
        data["trials"] = args.trials
    if args.seed is not None:
        data["master_seed"] = args.seed
    if args.t is not None:
        data["t"] = args.t
    if args.file is not None:
        data["tournament_path"] = args.file
        data.pop("family", None)
        data.pop("params", None)
    if args.out is not None:
        data["output_path"] = args.out
    config = ExperimentConfig.from_json_dict(data)
    report = run_sweep(config)
    if config.output_path:
        json_path, csv_path = write_sweep_report(report, config.output_path)
        print(f"wrote {json_path} and {csv_path}")
    else:
        json.dump(report, sys.stdout, indent=2, sort_keys=True)
        print()
    return EXIT_OK


def _cmd_exact(args) -> int:
    T = read_trn1(args.file)
    rows = [{"p": p, "probability": exact_hamiltonian_probability(T, p)}
            for p in args.p]
    payload = {"artifact_version": __version__, "n": T.n, "rows": rows}
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out}")
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        print()
    return EXIT_OK


def _cmd_analyze(args) -> int:
    T = read_trn1(args.file)
    k = args.k if args.k is not None else default_connector_k(args.p, args.t, args.sigma)
    cut = balanced_cut_search(T, effort=args.effort)
    result: dict = {
        "artifact_version": __version__,
        "n": T.n,
        "eps": args.eps,
        "k": k,
        "t": args.t,
        "cut": cut.to_json_dict(),
    }
    if cut.density >= 1 - args.eps:
        result["branch"] = "almost-directed cut"
        part, goodness = clean_to_good_partition(T, cut.A, cut.B, args.eps)
        refined = refine_partition(T, part, k, args.t)
        conns = k_connectors(T, refined.partition, k)
        mc = max_BA_matching(T, refined.partition)
        result["goodness"] = goodness.to_json_dict()
        result["partition"] = refined.partition.to_json_dict()
        result["moved_to_x"] = list(refined.moved)
        result["short_circuit"] = refined.short_circuit
        result["connectors"] = list(conns.members)
        result["connector_count"] = len(conns)
        result["matching"] = mc.to_json_dict()
    elif cut.method == "exact":
        result["branch"] = "no almost-directed cut"
    else:
        result["branch"] = "inconclusive"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            json.dump(result, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out}")
    else:
        json.dump(result, sys.stdout, indent=2, sort_keys=True)
        print()
    return EXIT_OK


def _cmd_verify(args) -> int:
    T = read_trn1(args.file)
    with open(args.certificate, "r", encoding="ascii") as fh:
        cert = HamiltonCertificate.from_text(fh.read())
    try:
        check_certificate(T, cert)
    except InvalidCertificate as exc:
        print(f"fail at position {exc.position}: {exc}")
        return EXIT_CERTIFICATE
    print("ok")
    return EXIT_OK


def _cmd_check(args) -> int:
    T = read_trn1(args.file)
    prof = semidegrees(T)
    print(f"valid TRN1 tournament: n={T.n} min_semidegree={prof.min_semidegree} "
          f"(witness vertex {prof.witness}) hamiltonian={is_hamiltonian(T)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tourneylab",
        description="Tournament Hamiltonicity laboratory under random vertex sampling.")
    parser.add_argument("--version", action="version", version=f"tourneylab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a tournament family into a TRN1 file")
    p_gen.add_argument("family", choices=["rotational", "near-regular", "transitive",
                                          "random", "theorem1-even", "theorem1-odd", "main"])
    p_gen.add_argument("--k", type=int)
    p_gen.add_argument("--m", type=int)
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--t", type=int)
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_est = sub.add_parser("estimate", help="Monte Carlo sweep over p values")
    p_est.add_argument("--config", help="JSON config; flags override its fields")
    p_est.add_argument("--file", help="TRN1 tournament (overrides config family)")
    p_est.add_argument("--p", type=float, action="append", default=[])
    p_est.add_argument("--trials", type=int)
    p_est.add_argument("--seed", type=int)
    p_est.add_argument("--t", type=int)
    p_est.add_argument("--out", help="basename for .json/.csv report files")
    p_est.set_defaults(func=_cmd_estimate)

    p_exact = sub.add_parser("exact", help="exact probability by subset enumeration (n <= 20)")
    p_exact.add_argument("--file", required=True)
    p_exact.add_argument("--p", type=float, action="append", required=True)
    p_exact.add_argument("--out")
    p_exact.set_defaults(func=_cmd_exact)

    p_an = sub.add_parser("analyze", help="cut search, cleaning, connectors, matching")
    p_an.add_argument("--file", required=True)
    p_an.add_argument("--eps", type=float, default=1e-3)
    p_an.add_argument("--k", type=int, help="connector threshold (default from --p/--sigma)")
    p_an.add_argument("--t", type=int, default=1)
    p_an.add_argument("--p", type=float, default=0.5)
    p_an.add_argument("--sigma", type=float, default=0.01)
    p_an.add_argument("--effort", type=int, default=8)
    p_an.add_argument("--out")
    p_an.set_defaults(func=_cmd_analyze)

    p_ver = sub.add_parser("verify", help="check a Hamilton-cycle certificate")
    p_ver.add_argument("--file", required=True)
    p_ver.add_argument("--certificate", required=True)
    p_ver.set_defaults(func=_cmd_verify)

    p_chk = sub.add_parser("check", help="validate a TRN1 file and print its profile")
    p_chk.add_argument("--file", required=True)
    p_chk.set_defaults(func=_cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BadParams, BadConfig, TooLarge, EmptyPart) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except (Trn1ParseError, DiagonalNonzero, PairViolation, SubsetOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidCertificate as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
