"""Command-line interface: `magiclab <suite> [subcommand] [flags]`.

Each module name runs its check suite when given no subcommand and
serializes CheckReports as JSON; the subcommands expose the individual
constructions (state builders, witnesses, sweeps, the gate search) with
machine-readable output.  Exit codes: 0 all checks pass, 1 a check
failed, 2 unknown suite or invalid parameters.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import agsp, glue, modular, prep, statevec as sv, zxcat
from .reports import dump_state, render_csv, sanitize, write_csv, write_json
from .suites import SUITES, agsp_sweep, run_suite


def _get(args, name, default=None):
    return getattr(args, name, default)


def _emit(args, payload) -> None:
    out = _get(args, "out")
    if out:
        write_json(out, payload)
        print(f"wrote {out}")
    else:
        print(json.dumps(sanitize(payload), indent=2))


def _int_list(text: str) -> list:
    return [int(part) for part in text.split(",") if part.strip()]


def _suite_cmd(args) -> int:
    return run_suite(
        args.suite,
        n=_get(args, "n"),
        seed=_get(args, "seed", 0),
        tol=_get(args, "tol"),
        trials=_get(args, "trials"),
        out=_get(args, "out"),
        jsonl=_get(args, "jsonl", False),
    )


def _zxcat_mi(args) -> int:
    n = _get(args, "n", 10)
    value = zxcat.mi_numeric(n)
    _emit(
        args,
        {
            "check": "mi-numeric",
            "params": {"n": n},
            "observed": {"mi": value, "asymptote": zxcat.mi_asymptote()},
            "bound": {"positive": 0.0},
            "pass": value > 0.0,
        },
    )
    return 0 if value > 0.0 else 1


def _zxcat_witness_cu(args) -> int:
    report = zxcat.cu_correlation_witness(_get(args, "n", 10))
    _emit(args, report.to_dict())
    return 0 if report.passed else 1


def _zxcat_witness_uc(args) -> int:
    report = zxcat.uc_sign_witness(_get(args, "n", 10))
    _emit(args, report.to_dict())
    return 0 if report.passed else 1


def _zxcat_build(args) -> int:
    n = _get(args, "n", 8)
    state = zxcat.build(n, args.variant)
    dumped = _get(args, "dump_state")
    if dumped:
        dump_state(dumped, state)
    _emit(
        args,
        {
            "check": "build",
            "params": {"n": n, "variant": args.variant},
            "observed": {"norm": float(np.linalg.norm(state.amps))},
            "bound": None,
            "pass": True,
            "dumped": dumped,
        },
    )
    return 0


def _agsp_sweep(args) -> int:
    rows = agsp_sweep(_int_list(args.n_list), _int_list(args.m_list))
    fields = ("n", "m", "sup_error", "bound", "coeff_sum", "p_minus_n")
    if args.csv:
        write_csv(args.csv, rows, fields)
        print(f"wrote {args.csv} ({len(rows)} rows)")
    else:
        print(render_csv(rows, fields), end="")
    return 0


def _prep_sandwich(args) -> int:
    n = _get(args, "n", 8)
    state = prep.prepare_sandwich(n)
    dev = 1.0 - sv.pure_overlap(state, zxcat.build(n, "i"))
    dumped = _get(args, "dump_state")
    if dumped:
        dump_state(dumped, state)
    _emit(
        args,
        {
            "check": "sandwich",
            "params": {"n": n},
            "observed": {"overlap_deviation": dev},
            "bound": {"overlap_deviation": 1e-12},
            "pass": dev <= 1e-12,
            "dumped": dumped,
        },
    )
    return 0 if dev <= 1e-12 else 1


def _prep_adaptive(args) -> int:
    n = _get(args, "n", 6)
    trials = _get(args, "trials", 50)
    seed = _get(args, "seed", 0)
    plus = zxcat.build(n, "plus")
    minus = zxcat.build(n, "minus")
    runs = []
    record = None
    for t in range(trials):
        record = prep.adaptive_run(n, seed=seed + t)
        target = plus if record.accepted else minus
        runs.append(
            {
                "outcomes": list(record.outcomes),
                "parity": record.parity,
                "accepted": record.accepted,
                "target_overlap": sv.pure_overlap(record.post_state, target),
            }
        )
    dumped = _get(args, "dump_state")
    if dumped and record is not None:
        dump_state(dumped, record.post_state)
    accepted = sum(r["accepted"] for r in runs)
    worst = max(1.0 - r["target_overlap"] for r in runs)
    _emit(
        args,
        {
            "check": "adaptive-runs",
            "params": {"n": n, "trials": trials, "seed": seed},
            "observed": {
                "accept_rate": accepted / trials,
                "expected_rate": prep.adaptive_success_probability(n),
                "worst_overlap_deviation": worst,
            },
            "bound": {"worst_overlap_deviation": 1e-10},
            "pass": worst <= 1e-10,
            "runs": runs,
            "dumped": dumped,
        },
    )
    return 0 if worst <= 1e-10 else 1


def _prep_mps(args) -> int:
    n = _get(args, "n", 10)
    state = prep.mps_contract(n, boundary=args.boundary)
    dev = 1.0 - sv.pure_overlap(state, zxcat.build(n, "plus"))
    dumped = _get(args, "dump_state")
    if dumped:
        dump_state(dumped, state)
    _emit(
        args,
        {
            "check": "mps-contract",
            "params": {"n": n, "boundary": args.boundary},
            "observed": {"overlap_deviation": dev},
            "bound": {"overlap_deviation": 1e-12},
            "pass": dev <= 1e-12,
            "dumped": dumped,
        },
    )
    return 0 if dev <= 1e-12 else 1


def _prep_bell(args) -> int:
    n = _get(args, "n", 4)
    trials = _get(args, "trials", 50)
    seed = _get(args, "seed", 0)
    target = zxcat.build(n, "plus")
    runs = []
    state = None
    worst = 0.0
    for t in range(trials):
        accepted, state = prep.bell_protocol_run(n, seed=seed + t)
        entry = {"accepted": accepted}
        if accepted:
            entry["target_overlap"] = sv.pure_overlap(state, target)
            worst = max(worst, 1.0 - entry["target_overlap"])
        runs.append(entry)
    dumped = _get(args, "dump_state")
    if dumped and state is not None:
        dump_state(dumped, state)
    _emit(
        args,
        {
            "check": "bell-runs",
            "params": {"n": n, "trials": trials, "seed": seed},
            "observed": {
                "accept_rate": sum(r["accepted"] for r in runs) / trials,
                "worst_accepted_deviation": worst,
            },
            "bound": {"worst_accepted_deviation": 1e-10},
            "pass": worst <= 1e-10,
            "runs": runs,
            "dumped": dumped,
        },
    )
    return 0 if worst <= 1e-10 else 1


def _modular_lpu(args) -> int:
    if args.data:
        with open(args.data) as handle:
            data = modular.ModularData.from_json(handle.read())
        source = args.data
    else:
        data = modular.double_fibonacci()
        source = "double-fibonacci"
    survivors = modular.lpu_search(data)
    only_identity = len(survivors) > 0 and all(
        c.is_identity(1e-9) for c in survivors
    )
    _emit(
        args,
        {
            "check": "lpu-search",
            "params": {"labels": data.k, "source": source},
            "observed": {
                "survivors": [
                    {"permutation": list(c.permutation), "phases": list(c.phases)}
                    for c in survivors
                ]
            },
            "bound": None,
            "pass": only_identity,
        },
    )
    return 0 if only_identity else 1


def _modular_verlinde(args) -> int:
    data = modular.double_fibonacci()
    value = modular.verlinde_dim(data.dims, args.genus)
    _emit(
        args,
        {
            "check": "verlinde-dimension",
            "params": {"genus": args.genus},
            "observed": {
                "value": float(value),
                "golden": {"a": str(value.a), "b": str(value.b)},
            },
            "bound": None,
            "pass": True,
        },
    )
    return 0


def _glue_run(args) -> int:
    sizes = tuple(_int_list(args.dims))
    trials = _get(args, "trials", 10)
    seed = _get(args, "seed", 0)
    records = []
    worst = 0.0
    for t in range(trials):
        inst = glue.generate_gluable_instance(sizes, seed=seed + t)
        glued = glue.glue_states(inst)
        part = inst.partition
        abc, bcd = part.qubits("A", "B", "C"), part.qubits("B", "C", "D")
        conclusions = {
            "abc_marginal": float(
                np.abs(
                    sv.reduced_density(glued, abc).mat
                    - sv.reduced_density(inst.psi, abc).mat
                ).max()
            ),
            "bcd_marginal": float(
                np.abs(
                    sv.reduced_density(glued, bcd).mat
                    - sv.reduced_density(inst.psi_prime, bcd).mat
                ).max()
            ),
            "mi_a_cd": sv.mutual_information(
                glued, part.qubits("A"), part.qubits("C", "D")
            ),
            "mi_ab_d": sv.mutual_information(
                glued, part.qubits("A", "B"), part.qubits("D")
            ),
        }
        worst = max(worst, *conclusions.values())
        records.append(
            {"seed": seed + t, "premises": inst.residuals, "conclusions": conclusions}
        )
    _emit(
        args,
        {
            "check": "glue-run",
            "params": {"dims": list(sizes), "trials": trials, "seed": seed},
            "observed": {"worst_conclusion": worst},
            "bound": {"worst_conclusion": 1e-8},
            "pass": worst <= 1e-8,
            "instances": records,
        },
    )
    return 0 if worst <= 1e-8 else 1


def _common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    parent.add_argument("--n", type=int, default=sup, help="problem size")
    parent.add_argument("--seed", type=int, default=sup, help="RNG seed (default 0)")
    parent.add_argument("--tol", type=float, default=sup, help="tolerance override")
    parent.add_argument("--trials", type=int, default=sup, help="randomized trials")
    parent.add_argument("--out", default=sup, help="write JSON to this path")
    parent.add_argument(
        "--jsonl", action="store_true", default=sup, help="one JSON object per line"
    )
    parent.add_argument(
        "--max-n", type=int, dest="max_n", default=sup,
        help="override the dense-simulation qubit cap",
    )
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="magiclab",
        description="Check suites and constructions for the ZX-cat state family.",
    )
    top = parser.add_subparsers(dest="suite", metavar="suite")

    for name in ("all", *SUITES):
        sub = top.add_parser(name, parents=[common], help=f"run the {name} suite")
        sub.set_defaults(func=_suite_cmd, suite=name)
        if name == "zxcat":
            actions = sub.add_subparsers(dest="action", metavar="subcommand")
            actions.add_parser("mi", parents=[common]).set_defaults(func=_zxcat_mi)
            actions.add_parser("witness-cu", parents=[common]).set_defaults(
                func=_zxcat_witness_cu
            )
            actions.add_parser("witness-uc", parents=[common]).set_defaults(
                func=_zxcat_witness_uc
            )
            build = actions.add_parser("build", parents=[common])
            build.add_argument(
                "--variant", default="plus", choices=("plus", "minus", "i")
            )
            build.add_argument("--dump-state", dest="dump_state")
            build.set_defaults(func=_zxcat_build)
        elif name == "agsp":
            actions = sub.add_subparsers(dest="action", metavar="subcommand")
            sweep = actions.add_parser("sweep", parents=[common])
            sweep.add_argument("--n-list", dest="n_list", default="16,64,256")
            sweep.add_argument("--m-list", dest="m_list", default="1,2,4,8")
            sweep.add_argument("--csv", help="write CSV to this path")
            sweep.set_defaults(func=_agsp_sweep)
        elif name == "prep":
            actions = sub.add_subparsers(dest="action", metavar="subcommand")
            for label, func in (
                ("sandwich", _prep_sandwich),
                ("adaptive", _prep_adaptive),
                ("bell", _prep_bell),
            ):
                action = actions.add_parser(label, parents=[common])
                action.add_argument("--dump-state", dest="dump_state")
                action.set_defaults(func=func)
            mps = actions.add_parser("mps", parents=[common])
            mps.add_argument(
                "--boundary", default="open", choices=("open", "periodic")
            )
            mps.add_argument("--dump-state", dest="dump_state")
            mps.set_defaults(func=_prep_mps)
        elif name == "modular":
            actions = sub.add_subparsers(dest="action", metavar="subcommand")
            lpu = actions.add_parser("lpu-search", parents=[common])
            lpu.add_argument("--data", help="modular data as JSON (default built in)")
            lpu.set_defaults(func=_modular_lpu)
            verlinde = actions.add_parser("verlinde", parents=[common])
            verlinde.add_argument("--genus", type=int, default=2)
            verlinde.set_defaults(func=_modular_verlinde)
        elif name == "glue":
            actions = sub.add_subparsers(dest="action", metavar="subcommand")
            run = actions.add_parser("run", parents=[common])
            run.add_argument("--dims", default="1,1,1,1,1,1")
            run.set_defaults(func=_glue_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if _get(args, "max_n") is not None:
        os.environ["MAGICLAB_MAX_N"] = str(args.max_n)
    func = _get(args, "func")
    if func is None:
        parser.print_help()
        return 2
    try:
        return func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
