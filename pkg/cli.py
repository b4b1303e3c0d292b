"""
Command line for the mirror quintic toolkit.

Every command returns a list of records plus a pass/fail flag; records are
written as JSON lines (or CSV) and any failed assertion exits with status 2
after printing its witness to stderr.
"""

import argparse
import configparser
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import pandas as pd
from sympy import factorint

from checks import CHECKS, CheckFailed
from counts import VARIETIES, combine_shards, count_U, count_affine_X, count_variety
from cycle_type_graph import draw_cycle_type_graph
from dioph import (
    DEFAULT_PRIME,
    DEFAULT_TRIALS,
    KINDS,
    HyperellipticModel,
    C_CURVE,
    D10_CURVE,
    count_hyperelliptic,
    count_hyperelliptic_naive,
    curve_report,
    disc_square_equivalence,
    substitution_identity_check,
    verify_prime,
)
from ffield import DEFAULT_BUDGET, BudgetExceeded
from field_cache import FIELDS, get_field
from quintic_galois import DEFAULT_PRIME_BUDGET, chebotarev_table, classify, reciprocity_scan
from sp4s6 import (
    Perm6,
    charpoly_mod2,
    classify_subgroup,
    conjugacy_table,
    cycle_type_to_class,
    matrix_order,
    phi,
)
from utils import get_memory_usage, parse_psi, parse_psi_list
from weil import cross_checked_quartic, curve_l_polynomial, mod2_class

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2

DEFAULT_CONFIG_FILE = "config.ini"
FORMATS = ("json-lines", "csv")
SCAN_METHODS = ("naive", "accelerated", "both")


class ConfigError(ValueError):
    """Bad flag or config.ini value."""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class ScanConfig:
    psi: list = field(default_factory=lambda: [parse_psi(2)])
    prime_max: int = 13
    depth: int = 1
    method: str = "accelerated"
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    format: str = "json-lines"
    workers: int = 1
    output: str = None
    prime_budget: int = DEFAULT_PRIME_BUDGET
    dioph_prime: int = DEFAULT_PRIME
    trials: int = DEFAULT_TRIALS
    dioph_seed: int = 0
    curve_diagnostics: bool = False
    full: bool = False


# (section, key, ScanConfig attribute, converter)
CONFIG_KEYS = [
    ("scan", "psi", "psi", parse_psi_list),
    ("scan", "prime_max", "prime_max", int),
    ("scan", "depth", "depth", int),
    ("scan", "method", "method", str),
    ("scan", "budget", "budget", lambda v: int(float(v))),
    ("scan", "seed", "seed", int),
    ("scan", "format", "format", str),
    ("scan", "workers", "workers", int),
    ("scan", "output", "output", str),
    ("galois", "prime_budget", "prime_budget", int),
    ("dioph", "prime", "dioph_prime", int),
    ("dioph", "trials", "trials", int),
    ("dioph", "seed", "dioph_seed", int),
    ("weil", "curve_diagnostics", "curve_diagnostics",
     lambda v: configparser.ConfigParser.BOOLEAN_STATES[v.strip().lower()]),
]

# ScanConfig attribute -> argparse dest
FLAG_DESTS = {
    "psi": "psi", "prime_max": "prime_max", "depth": "depth", "method": "method",
    "budget": "budget", "seed": "seed", "format": "format", "workers": "workers",
    "output": "output", "prime_budget": "prime_budget", "dioph_prime": "prime",
    "trials": "trials", "dioph_seed": "seed", "curve_diagnostics": "curve_diagnostics",
    "full": "full",
}


def load_config(path=None):
    """The parsed INI file; a missing default file is an empty config."""
    config = configparser.ConfigParser()
    if path is None:
        path = DEFAULT_CONFIG_FILE
        if not os.path.exists(path):
            return config
    elif not os.path.exists(path):
        raise ConfigError(f"{path} not found")
    config.read(path)
    return config


def check_config(config):
    """Every problem with the values in config, logged one by one."""
    problems = []
    for section, key, _, convert in CONFIG_KEYS:
        if section in config and key in config[section]:
            try:
                convert(config[section][key])
            except (ValueError, KeyError) as e:
                problems.append(f"Bad {key} in [{section}] section of config.ini: {e}")
    if config.has_option("scan", "method") and config["scan"]["method"] not in SCAN_METHODS:
        problems.append(f"Unknown method in [scan] section of config.ini: {config['scan']['method']}")
    if config.has_option("scan", "format") and config["scan"]["format"] not in FORMATS:
        problems.append(f"Unknown format in [scan] section of config.ini: {config['scan']['format']}")
    if config.has_option("scan", "depth") and config["scan"]["depth"].strip() not in ("1", "2"):
        problems.append("depth in [scan] section of config.ini must be 1 or 2")
    if config.has_option("dioph", "prime"):
        try:
            verify_prime(int(config["dioph"]["prime"]))
        except ValueError as e:
            problems.append(f"Bad prime in [dioph] section of config.ini: {e}")
    for problem in problems:
        logging.error(problem)
    return problems


def build_scan_config(args, config):
    """Flag > config file > default."""
    scan = ScanConfig()
    for section, key, attr, convert in CONFIG_KEYS:
        if section in config and key in config[section]:
            setattr(scan, attr, convert(config[section][key]))
    for attr, dest in FLAG_DESTS.items():
        value = getattr(args, dest, None)
        if value is not None and value is not False:
            setattr(scan, attr, value)
    if scan.workers < 1 or scan.prime_max < 2 or scan.trials < 1:
        raise ConfigError("workers, prime_max and trials must be positive")
    verify_prime(scan.dioph_prime)
    return scan


def write_records(records, fmt="json-lines", output=None):
    if fmt == "csv":
        text = pd.json_normalize(records).to_csv(index=False) if records else ""
    else:
        text = pd.DataFrame(records).to_json(orient="records", lines=True, default_handler=str) if records else ""
        if text and not text.endswith("\n"):
            text += "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
        logger.info(f"Wrote {len(records)} records to {output}")
    else:
        sys.stdout.write(text)


def report_failure(message, witness):
    print(json.dumps({"failed": message, "witness": witness}, default=str), file=sys.stderr)


def _field_for(q):
    factors = factorint(q)
    if len(factors) != 1:
        raise ConfigError(f"{q} is not a prime power")
    (p, k), = factors.items()
    return get_field(p, k)


def sharded_count(ctx, psi, variety, method, budget, shards, workers):
    """Count U or X through a process pool, one task per shard."""
    counter = count_affine_X if variety == "X-proj" else count_U
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(counter, ctx, psi, method, budget, (i, shards))
                   for i in range(shards)]
        parts = [f.result() for f in futures]
    if variety == "X-proj":
        return combine_shards(ctx, parts)
    return sum(parts)


def cmd_count(args, scan):
    ctx = _field_for(args.q)
    method = "accelerated" if scan.method == "both" else scan.method
    record = count_variety(ctx, scan.psi[0], args.variety, method, scan.budget).to_dict()
    ok = True
    if scan.method == "both" and args.variety in ("U", "Y", "X-proj"):
        naive = count_variety(ctx, scan.psi[0], args.variety, "naive", scan.budget)
        record["naive_count"] = naive.count
        ok = naive.count == record["count"]
    if args.shards:
        if args.variety not in ("U", "X-proj"):
            raise ConfigError("--shards applies to U and X-proj only")
        sharded = sharded_count(ctx, scan.psi[0], args.variety, method, scan.budget,
                                args.shards, scan.workers)
        record["sharded_count"] = sharded
        ok = ok and sharded == record["count"]
    record["cache"] = FIELDS.get_cache_stats()
    return [record], ok


def cmd_euler(args, scan):
    records, ok = [], True
    for psi in scan.psi:
        w = cross_checked_quartic(psi, args.q, scan.method, scan.budget)
        euler = mod2_class(w)
        record = {
            "psi": str(psi), "q": w.q, "a": w.a, "b": w.b,
            "coefficients": w.coefficients,
            "class": euler.name if euler else None,
            "eigenvalue_error": w.check_weil_bound(),
        }
        if scan.curve_diagnostics:
            record["L_A"] = curve_l_polynomial(psi, args.q, "A")
            record["L_B"] = curve_l_polynomial(psi, args.q, "B")
        ok = ok and euler is not None and euler.name != "FORBIDDEN"
        records.append(record)
    return records, ok


def cmd_reciprocity(args, scan):
    records, ok = [], True
    executor = ProcessPoolExecutor(max_workers=scan.workers) if scan.workers > 1 else None
    try:
        for psi in scan.psi:
            mapper = executor.map if executor else map
            rows, summary = reciprocity_scan(psi, scan.prime_max, scan.depth, scan.budget,
                                             scan.method, mapper=mapper)
            records.extend(rows)
            logger.info(f"Reciprocity summary: {summary}")
            logger.debug(f"Memory usage: {get_memory_usage()}")
            if summary["failures"] or summary["forbidden_count"]:
                ok = False
                report_failure("reciprocity scan", {
                    "summary": summary,
                    "rows": [r for r in rows if not r["ok"]][:5],
                })
    finally:
        if executor:
            executor.shutdown()
    return records, ok


def _plot_path(path, psi, many):
    if not many:
        return path
    stem, ext = os.path.splitext(path)
    label = str(psi).replace("/", "_").replace("-", "m")
    return f"{stem}_{label}{ext or '.png'}"


def cmd_classify(args, scan):
    records, ok = [], True
    for psi in scan.psi:
        verdict = classify(psi, scan.prime_budget)
        record = verdict.to_dict()
        if args.plot and verdict.tag not in ("REDUCIBLE", "UNKNOWN"):
            rows = chebotarev_table(verdict)
            path = _plot_path(args.plot, psi, len(scan.psi) > 1)
            draw_cycle_type_graph(rows, f"psi = {psi}: {verdict.tag}", path)
            record["plot"] = path
        if verdict.tag == "UNKNOWN":
            ok = False
            report_failure("classification inconclusive", record)
        records.append(record)
    return records, ok


def cmd_s6(args, scan):
    records = []
    if args.sigma:
        sigma = Perm6.from_cycles(args.sigma)
        m = phi(sigma)
        ct = sigma.cycle_type()
        record = {
            "sigma": str(sigma),
            "cycle_type": str(ct),
            "matrix": m.tolist(),
            "order": matrix_order(m),
            "charpoly": list(charpoly_mod2(m)),
        }
        if ct.fixed_points:
            record["euler_class"] = cycle_type_to_class(ct.restricted(5)).name
        records.append(record)
    if args.generators:
        generators = [Perm6.from_cycles(g) for g in args.generators.split(",")]
        records.append(classify_subgroup(generators).to_dict())
    if args.table or not records:
        records.extend(conjugacy_table())
    return records, True


def cmd_curve(args, scan):
    records, ok = [], True
    if args.f11_checks or args.p is None:
        report = curve_report(11)
        records.append(report)
        if not report["ok"] or (report["C_count"], report["D10_count"]) != (12, 8):
            ok = False
            report_failure("F_11 curve checks", report)
    if args.p is not None:
        for name, coeffs in (("C", C_CURVE), ("D10", D10_CURVE)):
            model = HyperellipticModel(args.p, coeffs)
            count = count_hyperelliptic(model)
            naive = count_hyperelliptic_naive(model)
            records.append({"curve": name, "p": args.p, "count": count, "naive_count": naive})
            ok = ok and count == naive
    if args.psi:
        for psi in scan.psi:
            disc_square, five_square = disc_square_equivalence(psi)
            records.append({"psi": str(psi), "disc_square": disc_square, "five_square": five_square})
    return records, ok


def cmd_identity(args, scan):
    kinds = KINDS if args.kind == "all" else [args.kind]
    records, ok = [], True
    for kind in kinds:
        report = substitution_identity_check(kind, scan.trials, scan.dioph_seed, scan.dioph_prime,
                                             mutate=args.mutate)
        records.append(report)
        passed = not report["ok"] if args.mutate else report["ok"]
        if not passed:
            ok = False
            report_failure(f"{kind} substitution", report)
    return records, ok


def cmd_selftest(args, scan):
    records, ok = [], True
    for check in CHECKS:
        name = check.__module__.rsplit(".", 1)[-1]
        start = time.time()
        try:
            result = check(scan)
            records.append({"check": name, "ok": True, "seconds": round(time.time() - start, 2),
                            "result": result})
            logging.info(f"Check passed: {name}")
        except CheckFailed as e:
            ok = False
            records.append({"check": name, "ok": False, "error": str(e), "witness": e.witness})
            report_failure(name, e.witness)
        except (ArithmeticError, ValueError, RuntimeError) as e:
            ok = False
            logging.error(f"Check {name} raised {type(e).__name__}: {e}")
            records.append({"check": name, "ok": False, "error": f"{type(e).__name__}: {e}"})
            report_failure(name, {"error": str(e)})
    return records, ok


COMMANDS = {
    "count": cmd_count,
    "euler": cmd_euler,
    "reciprocity": cmd_reciprocity,
    "classify": cmd_classify,
    "s6": cmd_s6,
    "curve": cmd_curve,
    "identity": cmd_identity,
    "selftest": cmd_selftest,
}


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file (default config.ini)")
    common.add_argument("--debug", action="store_true", help="Log at DEBUG level")
    common.add_argument("--output", help="Write records here instead of stdout")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--workers", type=int)
    common.add_argument("--budget", type=lambda v: int(float(v)), help="Max inner-loop steps")
    common.add_argument("--seed", type=int)
    common.add_argument("--method", choices=SCAN_METHODS)
    common.add_argument("--psi", type=parse_psi_list, help="Comma separated rationals")

    parser = ArgumentParser(description="Mirror quintic point counts, Galois groups and checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    p = sub.add_parser("count", parents=[common], help="Point count of one variety")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--variety", choices=VARIETIES, default="X-proj")
    p.add_argument("--shards", type=int, help="Split the outer loop over a process pool")

    p = sub.add_parser("euler", parents=[common], help="Mirror Euler factor and its mod-2 class")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--curve-diagnostics", action="store_true", default=None)

    p = sub.add_parser("reciprocity", parents=[common], help="Per-prime reciprocity scan")
    p.add_argument("--prime-max", type=int)
    p.add_argument("--depth", type=int, choices=(1, 2))

    p = sub.add_parser("classify", parents=[common], help="Galois group of f_psi")
    p.add_argument("--prime-budget", type=int)
    p.add_argument("--plot", help="PNG path for the cycle type chart")

    p = sub.add_parser("s6", parents=[common], help="The S6 / Sp4(F2) dictionary")
    p.add_argument("--table", action="store_true", help="Conjugacy classes of S6")
    p.add_argument("--sigma", help="A permutation such as (123)(45)")
    p.add_argument("--generators", help="Comma separated permutations")

    p = sub.add_parser("curve", parents=[common], help="Hyperelliptic curve checks")
    p.add_argument("--f11-checks", action="store_true")
    p.add_argument("--p", type=int, help="Also count both curves over F_p")

    p = sub.add_parser("identity", parents=[common], help="Randomized substitution checks")
    p.add_argument("--kind", choices=list(KINDS) + ["all"], default="all")
    p.add_argument("--trials", type=int)
    p.add_argument("--prime", type=int)
    p.add_argument("--mutate", action="store_true", help="Offset Y by one; the check must fail")

    p = sub.add_parser("selftest", parents=[common], help="Run every check in order")
    p.add_argument("--full", action="store_true", help="Include the larger fields and primes")
    p.add_argument("--prime-budget", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--curve-diagnostics", action="store_true", default=None)

    return parser


def parse_args(argv=None):
    return build_parser().parse_args(argv)


def dispatch(args):
    try:
        config = load_config(args.config)
        if check_config(config):
            return EXIT_USAGE
        scan = build_scan_config(args, config)
    except (ConfigError, ValueError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_USAGE

    logger.debug(f"Running {args.command} with {asdict(scan)}")
    try:
        records, ok = COMMANDS[args.command](args, scan)
    except (ValueError, BudgetExceeded) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except ArithmeticError as e:
        report_failure(args.command, {"error": f"{type(e).__name__}: {e}"})
        return EXIT_FAILED

    write_records(records, scan.format, scan.output)
    return EXIT_OK if ok else EXIT_FAILED


def main(argv=None):
    return dispatch(parse_args(argv))
