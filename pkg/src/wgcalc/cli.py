"""Command-line front end: configuration, an on-disk result cache and report emission.

Exit codes: 0 success, 1 a checked identity failed, 2 usage error, 3 bound exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from . import __version__
from .exactnum import RatFrac
from .pairings import PairPartition, pairing_of_type
from .partitions import all_partitions, partition

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BOUNDS = 3


class UsageError(ValueError):
    pass


class BoundsError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    k_max: int = 4
    mu_max: int = 8
    r_max: int = 4
    jack_degree: int = 6
    hbar_order: int = 4
    b_set: list = field(default_factory=lambda: [Fraction(1), Fraction(2), Fraction(-2)])
    cache_dir: str = ""
    format: str = "text"
    expensive: bool = False

    def validate(self, sweeping=False):
        for name in ("k_max", "mu_max", "r_max", "jack_degree", "hbar_order"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")
        if self.format not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if sweeping and any(b in (0, -1) for b in self.b_set):
            raise UsageError("b = 0 and b = -1 are excluded from sweeps")


def _parse_bool(text):
    return str(text).strip().lower() in ("1", "true", "yes", "on")


def _parse_b_set(text):
    try:
        return [Fraction(x.strip()) for x in str(text).split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read b values from {text!r}") from None


_CONVERTERS = {"k_max": int, "mu_max": int, "r_max": int, "jack_degree": int, "hbar_order": int,
               "b_set": _parse_b_set, "cache_dir": str, "format": str, "expensive": _parse_bool}


def read_config_file(path):
    """key = value lines; '#' starts a comment; unknown keys are rejected."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return values


def load_config(overrides=None, environ=None):
    """Defaults, then the file named by WGCALC_CONFIG, then explicit overrides."""
    environ = os.environ if environ is None else environ
    config = RunConfig()
    path = environ.get("WGCALC_CONFIG")
    layers = [read_config_file(path)] if path else []
    if environ.get("WGCALC_CACHE_DIR"):
        layers.insert(0, {"cache_dir": environ["WGCALC_CACHE_DIR"]})
    layers.append({k: v for k, v in (overrides or {}).items() if v is not None})
    names = {f.name for f in fields(RunConfig)}
    for layer in layers:
        for key, value in layer.items():
            if key in names:
                setattr(config, key, value)
    return config


# ---------------------------------------------------------------------------
# content-addressed result cache
# ---------------------------------------------------------------------------

class ResultCache:
    """One JSON file per record, named by the sha256 of the canonical key."""

    def __init__(self, directory, version=__version__):
        self.directory = Path(directory) if directory else None
        self.version = version

    @staticmethod
    def canonical_key(kind, params):
        return json.dumps({"kind": kind, "params": params}, sort_keys=True, separators=(",", ":"))

    def _path(self, key):
        return self.directory / (hashlib.sha256(key.encode()).hexdigest() + ".json")

    def get(self, kind, params):
        if self.directory is None:
            return None
        key = self.canonical_key(kind, params)
        try:
            record = json.loads(self._path(key).read_text())
        except (OSError, ValueError):
            return None
        if not self._valid(record) or record["key"] != key:
            return None
        return record["value"]

    def put(self, kind, params, value):
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        key = self.canonical_key(kind, params)
        record = {"key": key, "version": self.version, "value": value,
                  "digest": hashlib.sha256(value.encode()).hexdigest()}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as handle:
            json.dump(record, handle, sort_keys=True)
        os.replace(tmp, self._path(key))

    def _valid(self, record):
        return (isinstance(record, dict) and record.get("version") == self.version
                and isinstance(record.get("value"), str)
                and hashlib.sha256(record["value"].encode()).hexdigest() == record.get("digest"))

    def entries(self):
        if self.directory is None or not self.directory.is_dir():
            return []
        out = []
        for path in sorted(self.directory.glob("*.json")):
            try:
                record = json.loads(path.read_text())
                ok = self._valid(record)
                key = record.get("key", "?") if isinstance(record, dict) else "?"
            except (OSError, ValueError):
                ok, key = False, "?"
            out.append((path, key, ok))
        return out

    def gc(self):
        """Remove corrupt, stale-version and leftover temporary files; return the count removed."""
        removed = 0
        if self.directory is None or not self.directory.is_dir():
            return 0
        for path in self.directory.glob("*.tmp"):
            path.unlink(missing_ok=True)
            removed += 1
        for path, _, ok in self.entries():
            if not ok:
                path.unlink(missing_ok=True)
                removed += 1
        return removed


def cached(cache, kind, params, compute):
    """Serialized value from the cache, computing and storing it on a miss."""
    hit = cache.get(kind, params)
    if hit is not None:
        return hit
    value = compute()
    cache.put(kind, params, value)
    return value


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parts(text):
    try:
        parts = [int(x) for x in text.replace(" ", "").strip("()").split(",") if x]
    except ValueError:
        raise UsageError(f"cannot read a partition from {text!r}") from None
    if not parts or any(p < 1 for p in parts):
        raise UsageError(f"parts must be positive integers: {text!r}")
    return parts


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot read integers from {text!r}") from None


def build_parser():
    parser = _Parser(prog="wgcalc", description="Exact Weingarten and Hurwitz computations.")
    parser.add_argument("--version", action="version", version=f"wgcalc {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default=None)
    common.add_argument("--cache-dir", default=None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    wg = sub.add_parser("wg", parents=[common], help="Weingarten values for a profile")
    wg.add_argument("--profile", default="bt", help="o, a, b-only or bt")
    target = wg.add_mutually_exclusive_group(required=True)
    target.add_argument("--k", type=int)
    target.add_argument("--pairing")
    wg.add_argument("--series", type=int, metavar="R", help="large-N coefficients up to order R")

    hz = sub.add_parser("hurwitz", parents=[common], help="connected bt-monotone Hurwitz number")
    hz.add_argument("g")
    hz.add_argument("n", type=int)
    hz.add_argument("mu")
    hz.add_argument("--method", choices=["recursion", "enum", "jack"], default="recursion")

    jk = sub.add_parser("jack", parents=[common], help="Jack function in power sums")
    jk.add_argument("partition")

    def add_verify_options(p):
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--expensive", action="store_true", default=None)
        p.add_argument("--g", default=None, help="comma-separated genera, e.g. 0,1/2")
        p.add_argument("--n", default=None, help="comma-separated numbers of parts")
        p.add_argument("--max-size", type=int, default=None)
        p.add_argument("--b", default=None, help="comma-separated b values")

    vf = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vf.add_argument("suite", choices=["jm", "virasoro", "tables", "roots"])
    add_verify_options(vf)
    jm = sub.add_parser("jm-verify", parents=[common], help="same as 'verify jm'")
    add_verify_options(jm)

    sw = sub.add_parser("sweep", parents=[common], help="real-rootedness and interlacing report")
    add_verify_options(sw)

    ch = sub.add_parser("cache", parents=[common], help="inspect or clean the result cache")
    ch.add_argument("action", choices=["ls", "gc"])
    return parser


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _emit(out, text):
    out.write(text if text.endswith("\n") else text + "\n")


def _normalized_series(value, profile, k, R):
    """h_r with Wg = (1-t)^(-k) Σ h_r (-1/N)^r for profiles with M, Σ h_r (-1/N)^r otherwise."""
    from .exactnum import MPoly, series_at_infinity, substitute
    t_ = MPoly.var("t")
    if profile.b_edge_has_m:
        value = substitute(value, {"M": RatFrac(MPoly.var("N"), 1 - t_)})
    series = series_at_infinity(value, R)
    prefactor = RatFrac((1 - t_) ** k) if profile.b_edge_has_m else RatFrac(1)
    return [RatFrac.coerce(c) * prefactor * (-1) ** r for r, c in enumerate(series.coeffs)]


def cmd_wg(args, config, cache, out):
    from .weingarten import WG_LEVEL_BOUND, profile_by_name, wg_solve
    try:
        profile = profile_by_name(args.profile)
    except (KeyError, ValueError):
        raise UsageError(f"unknown profile {args.profile!r}") from None
    if args.pairing is not None:
        try:
            pairings = [PairPartition.parse(args.pairing)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        k = pairings[0].k
    else:
        k = args.k
        if k < 1:
            raise UsageError("k must be positive")
        pairings = [pairing_of_type(lam) for lam in sorted(all_partitions(k), reverse=True)]
    if k > WG_LEVEL_BOUND:
        raise BoundsError(f"level {k} exceeds the bound {WG_LEVEL_BOUND}")
    if args.series is not None and args.series < 0:
        raise UsageError("series order must be nonnegative")

    def compute():
        table = wg_solve(k, profile)
        rows = []
        for m in pairings:
            value = table.value(m)
            row = {"pairing": str(m), "coset_type": list(_coset(m)), "value": value.to_record(),
                   "text": str(value)}
            if args.series is not None:
                coeffs = _normalized_series(value, profile, k, args.series)
                row["series"] = [c.to_record() for c in coeffs]
                row["series_text"] = [str(c) for c in coeffs]
            rows.append(row)
        return json.dumps(rows, sort_keys=True)

    params = {"profile": profile.name, "k": k, "pairings": [str(m) for m in pairings],
              "series": args.series}
    rows = json.loads(cached(cache, "wg", params, compute))
    if config.format == "json":
        _emit(out, json.dumps(rows, sort_keys=True, indent=2))
    elif config.format == "csv":
        lines = ["pairing,coset_type,value"] + [
            f"\"{r['pairing']}\",\"{','.join(map(str, r['coset_type']))}\",\"{r['text']}\"" for r in rows]
        _emit(out, "\n".join(lines))
    else:
        for r in rows:
            _emit(out, f"Wg({r['pairing']}) = {r['text']}")
            for order, c in enumerate(r.get("series_text", [])):
                _emit(out, f"  h_{order} = {c}")
    return EXIT_OK


def _coset(m):
    from .pairings import coset_type_mate
    return coset_type_mate(m.mate)


def cmd_hurwitz(args, config, cache, out):
    from .hurwitz import HURWITZ_SIZE_BOUND, H_bt, H_bt_enum, H_bt_jack, doubled_genus, genus_label
    mu = _parts(args.mu)
    try:
        twice_g = doubled_genus(args.g)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"genus must be a nonnegative half-integer, got {args.g!r}") from None
    if len(mu) != args.n:
        raise UsageError(f"n = {args.n} but μ has {len(mu)} parts")
    if sum(mu) > HURWITZ_SIZE_BOUND:
        raise BoundsError(f"|μ| = {sum(mu)} exceeds {HURWITZ_SIZE_BOUND}")
    method = {"recursion": H_bt, "enum": H_bt_enum, "jack": H_bt_jack}[args.method]
    g = Fraction(twice_g, 2)
    key = {"g": genus_label(twice_g), "mu": sorted(mu, reverse=True), "method": args.method}
    text = cached(cache, "hurwitz", key,
                  lambda: json.dumps(method(g, args.n, mu).to_record(), sort_keys=True))
    from .exactnum import MPoly
    value = MPoly.from_record(json.loads(text))
    if config.format == "json":
        _emit(out, json.dumps({**key, "value": json.loads(text)}, sort_keys=True))
    else:
        _emit(out, str(value))
    return EXIT_OK


def cmd_jack(args, config, cache, out):
    from .symfunc import JACK_DEGREE_BOUND, jack
    lam = partition(_parts(args.partition))
    bound = JACK_DEGREE_BOUND if config.expensive else min(config.jack_degree, JACK_DEGREE_BOUND)
    if sum(lam) > bound:
        raise BoundsError(f"|λ| = {sum(lam)} exceeds the Jack degree bound {bound}")
    f = jack(lam)
    if config.format == "json":
        _emit(out, json.dumps({"partition": list(lam), "terms": f.to_records()}, sort_keys=True))
    else:
        _emit(out, str(f))
    return EXIT_OK


def _report(results, config, out):
    """results: list of dicts with check, status, kind and optional witness."""
    if config.format == "json":
        _emit(out, json.dumps(results, sort_keys=True, indent=2))
    elif config.format == "csv":
        _emit(out, "check,kind,status,witness")
        for r in results:
            _emit(out, ",".join(json.dumps(str(r.get(c, ""))) for c in ("check", "kind", "status", "witness")))
    else:
        for r in results:
            line = f"[{r['status'].upper()}] {r['kind']}: {r['check']}"
            if r.get("witness"):
                line += f"  ({r['witness']})"
            _emit(out, line)
        failed = sum(r["status"] != "pass" for r in results)
        _emit(out, f"{len(results) - failed} passed, {failed} failed")
    return EXIT_OK if all(r["status"] == "pass" for r in results) else EXIT_FAILURE


def _verify_jm(args, config):
    from .jmops import CHEAP_LEVEL_BOUND, JM_LEVEL_BOUND, ExpensiveComputation, verify_suite
    top = args.k if args.k is not None else CHEAP_LEVEL_BOUND
    if top > JM_LEVEL_BOUND:
        raise BoundsError(f"k = {top} exceeds the bound {JM_LEVEL_BOUND}")
    if top < 1:
        raise UsageError("k must be positive")
    levels = [top] if args.k is not None else list(range(1, top + 1))
    results = []
    try:
        for k in levels:
            results += [r.record() for r in verify_suite(k, expensive=config.expensive)]
    except ExpensiveComputation as exc:
        raise BoundsError(f"{exc} (pass --expensive)") from None
    return results


def _verify_virasoro(args, config):
    from .hurwitz import commutator_check, virasoro_A, virasoro_bt, virasoro_residual
    k_max = args.k if args.k is not None else config.k_max
    out = []
    for m in (1, 2, 3):
        ok = virasoro_residual(m, k_max, config.hbar_order).is_zero()
        out.append({"check": f"L_{m} Z vanishes on the window x^≤{k_max} ħ^≤{config.hbar_order}",
                    "kind": "THEOREM", "status": "pass" if ok else "fail"})
    for m in range(1, 5):
        for n in range(m + 1, 5):
            ok = commutator_check(m, n, sign=-1)
            out.append({"check": f"[L_{m}, L_{n}] = ({n}-{m}) L_{m + n} on a random series",
                        "kind": "THEOREM", "status": "pass" if ok else "fail"})
    ok = virasoro_bt(2).specialize({"b": 1}) == virasoro_A(2)
    out.append({"check": "the b = 1 operators are the real-Grassmannian operators", "kind": "THEOREM",
                "status": "pass" if ok else "fail"})
    return out


def _verify_tables(args, config):
    from .hurwitz import _H, genus_label
    from .reference_tables import all_entries
    out = []
    for twice_g, mu, expected in all_entries():
        got = _H(twice_g, mu)
        ok = got == expected
        out.append({"check": f"H_{{{genus_label(twice_g)},{len(mu)}}}{tuple(mu)}", "kind": "THEOREM",
                    "status": "pass" if ok else "fail", "witness": "" if ok else f"got {got}"})
    return out


def _sweep_grid(args, config):
    from .hurwitz import doubled_genus
    genera = [x.strip() for x in (args.g or "0").split(",") if x.strip()]
    try:
        for g in genera:
            doubled_genus(g)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad genus list {args.g!r}") from None
    ns = _int_list(args.n) if args.n else [1, 2]
    max_size = args.max_size if args.max_size is not None else config.mu_max
    if max_size < 1 or any(n < 1 for n in ns):
        raise UsageError("sizes and numbers of parts must be positive")
    from .hurwitz import HURWITZ_SIZE_BOUND
    if max_size + 1 > HURWITZ_SIZE_BOUND:
        raise BoundsError(f"max size {max_size} exceeds {HURWITZ_SIZE_BOUND - 1}")
    return genera, ns, range(1, max_size + 1), config.b_set


def _verify_roots(args, config):
    from .analysis import sweep
    report = sweep(*_sweep_grid(args, config))
    out = []
    for row in report.rows:
        label = f"g={row.g} mu={row.mu} b={row.b}"
        for name, value in (("real-rooted", row.real_rooted), ("interlacing", row.interlacing_pass)):
            if value is None:
                continue
            out.append({"check": f"{name} {label}", "kind": "CONJECTURE",
                        "status": "pass" if value else "fail", "witness": "" if value else row.witness})
    return out


def cmd_verify(args, config, cache, out):
    suite = getattr(args, "suite", "jm")
    runner = {"jm": _verify_jm, "virasoro": _verify_virasoro, "tables": _verify_tables,
              "roots": _verify_roots}[suite]
    return _report(runner(args, config), config, out)


def cmd_sweep(args, config, cache, out):
    from .analysis import sweep
    report = sweep(*_sweep_grid(args, config))
    if config.format == "json":
        rows = [{"g": r.g, "n": r.n, "mu": list(r.mu), "b": str(r.b), "real_rooted": r.real_rooted,
                 "interlacing_pass": r.interlacing_pass, "witness": r.witness} for r in report.rows]
        _emit(out, json.dumps(rows, sort_keys=True, indent=2))
    elif config.format == "csv":
        _emit(out, report.to_csv())
    else:
        _emit(out, f"{report.checks} checks, {len(report.failures)} failures, "
                   f"{report.vacuous} vanishing keys")
        for r in report.failures:
            _emit(out, f"FAIL g={r.g} mu={r.mu} b={r.b}: {r.witness}")
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_cache(args, config, cache, out):
    if cache.directory is None:
        raise UsageError("no cache directory configured (set WGCALC_CACHE_DIR or --cache-dir)")
    if args.action == "gc":
        _emit(out, f"removed {cache.gc()} entries")
    else:
        for path, key, ok in cache.entries():
            _emit(out, f"{path.name}\t{'ok' if ok else 'invalid'}\t{key}")
    return EXIT_OK


COMMANDS = {"wg": cmd_wg, "hurwitz": cmd_hurwitz, "jack": cmd_jack, "verify": cmd_verify,
            "jm-verify": cmd_verify, "sweep": cmd_sweep, "cache": cmd_cache}


def main(argv=None, out=None, environ=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        overrides = {"format": args.format, "cache_dir": args.cache_dir,
                     "expensive": getattr(args, "expensive", None)}
        if getattr(args, "b", None):
            overrides["b_set"] = _parse_b_set(args.b)
        config = load_config(overrides, environ)
        config.validate(sweeping=args.command in ("sweep", "verify") and
                        getattr(args, "suite", "roots") == "roots")
        cache = ResultCache(config.cache_dir or None)
        return COMMANDS[args.command](args, config, cache, out)
    except SystemExit as exc:              # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except UsageError as exc:
        print(f"wgcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _bound_errors() as exc:
        print(f"wgcalc: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUNDS


def _bound_errors():
    from .hurwitz import BoundExceeded as HurwitzBound
    from .jmops import ExpensiveComputation
    from .symfunc import DegreeBoundExceeded
    from .weingarten import BoundExceeded as LevelBound
    return (BoundsError, HurwitzBound, ExpensiveComputation, DegreeBoundExceeded, LevelBound)


if __name__ == "__main__":
    sys.exit(main())
