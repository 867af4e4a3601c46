"""Command-line entry point: ``curvelab <command> --config FILE ...``.

Exit codes: 0 success, 2 invalid input, 3 work limit, 4 non-conforming
probabilistic result.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from fractions import Fraction

from .curves import curve_from_json
from .errors import CharacteristicError, InvalidArgument, NotIsolated, WorkLimitExceeded
from .fields import SEARCH_PRIME, make_field
from .flecnode import flec_report, salmon_flecnode
from .groebner import IdealBasis
from .hilbert import acc_explore
from .incidence import (census, config_from_json, contagion_demo, dichotomy_demo,
                        doubly_ruled_audit)
from .interpolate import ReductionConfig, degree_reduce
from .mpoly import parse_poly

log = logging.getLogger("curvelab")

EXIT_OK, EXIT_INVALID, EXIT_LIMIT, EXIT_NONCONFORMING = 0, 2, 3, 4


class NonConforming(Exception):
    def __init__(self, payload):
        super().__init__("probabilistic guarantee not met")
        self.payload = payload


def _need(cfg: dict, key: str):
    if key not in cfg:
        raise InvalidArgument(f"config is missing {key!r}")
    return cfg[key]


def _A(args, cfg: dict):
    A = args.A if args.A is not None else cfg.get("A")
    if A is None:
        raise InvalidArgument("this command needs A (--A or an 'A' config key)")
    return Fraction(A)


def _surface(cfg: dict, p: int):
    F = make_field(p)
    return parse_poly(_need(cfg, "T"), 3, F), F


def cmd_census(args, cfg):
    conf = config_from_json(cfg, args.field_prime, args.seed)
    A = args.A if args.A is not None else cfg.get("A")
    return census(conf, None if A is None else Fraction(A))


def cmd_reduce(args, cfg):
    conf = config_from_json(cfg, args.field_prime, args.seed)
    rc = ReductionConfig(rng_seed=args.seed, **cfg.get("reduction", {}))
    res = degree_reduce(conf.curves, _A(args, cfg), rc)
    if not res.conforming:
        raise NonConforming(res)
    return res


def cmd_flecnode(args, cfg):
    T, F = _surface(cfg, args.field_prime)
    r = int(cfg.get("r", 3))
    out = {"T": cfg["T"], "points": [flec_report(T, z, r).to_json() for z in cfg.get("points", [])]}
    if cfg.get("salmon"):
        out["salmon"] = salmon_flecnode(T, seed=args.seed).to_json()
    return out


def _arity(texts) -> int:
    idx = [int(m) for t in texts for m in re.findall(r"x(\d+)", t)]
    return max(idx + [1])


def cmd_acc(args, cfg):
    chain = cfg if isinstance(cfg, list) else _need(cfg, "ideals")
    if not chain or not all(isinstance(g, list) and g for g in chain):
        raise InvalidArgument("acc expects a nonempty list of nonempty generator lists")
    F = make_field(args.field_prime)
    N = _arity([t for g in chain for t in g])
    ideals = [IdealBasis.of([parse_poly(t, N, F) for t in gens]) for gens in chain]
    return acc_explore(ideals)


def cmd_doubly_ruled(args, cfg):
    T, _ = _surface(cfg, args.field_prime)
    return doubly_ruled_audit(T, int(cfg.get("samples", 20)), args.seed,
                              int(cfg.get("family_size", 5)))


def cmd_dichotomy(args, cfg):
    conf = config_from_json(cfg, args.field_prime, args.seed)
    return dichotomy_demo(conf, _A(args, cfg), int(cfg.get("C2", 100)), args.seed)


def cmd_demo(args, cfg):
    T, F = _surface(cfg, args.field_prime)
    curves = [curve_from_json(c, F) for c in cfg.get("curves", [])]
    return contagion_demo(T, curves, int(cfg.get("t", 1)), int(cfg.get("r", 3)),
                          int(cfg.get("global_samples", 30)), args.seed)


COMMANDS = {
    "census": cmd_census,
    "reduce": cmd_reduce,
    "flecnode": cmd_flecnode,
    "acc": cmd_acc,
    "doubly-ruled": cmd_doubly_ruled,
    "dichotomy": cmd_dichotomy,
    "demo": cmd_demo,
}


def _payload(result):
    return result.to_json() if hasattr(result, "to_json") else result


def _csv_text(result) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    if hasattr(result, "csv_rows"):
        w.writerows(result.csv_rows())
    else:
        w.writerow(["key", "value"])
        for k, v in _payload(result).items():
            w.writerow([k, v if not isinstance(v, (dict, list)) else json.dumps(v)])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvelab", description="curve incidence toolkit")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", required=True, help="JSON config file, or - for stdin")
    ap.add_argument("--field-prime", type=int, default=SEARCH_PRIME,
                    help="prime modulus (0 selects the rationals where supported)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="-")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--A", type=str, default=None, help="richness parameter")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _write(args, text: str):
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def _render(args, result) -> str:
    if args.format == "csv":
        return _csv_text(result)
    return json.dumps(_payload(result), indent=2, default=str) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.config == "-":
            cfg = json.load(sys.stdin)
        else:
            with open(args.config) as fh:
                cfg = json.load(fh)
        if args.field_prime == 0 and args.command != "acc":
            raise InvalidArgument("only acc runs over the rationals")
        result = COMMANDS[args.command](args, cfg)
        _write(args, _render(args, result))
        return EXIT_OK
    except NonConforming as e:
        _write(args, _render(args, e.payload))
        log.warning("result does not meet the probabilistic guarantee")
        return EXIT_NONCONFORMING
    except (WorkLimitExceeded, NotIsolated) as e:
        print(f"work limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (InvalidArgument, CharacteristicError, OSError, json.JSONDecodeError,
            KeyError, TypeError, ValueError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
