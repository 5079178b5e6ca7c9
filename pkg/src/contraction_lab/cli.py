"""Command-line front end: contraction-lab <command> [options].

Exit codes: 0 ok, 1 a verification failed, 2 usage or domain error.
Every command prints an output record (command, inputs, outputs,
tolerances, pass) as an aligned text table, JSON or CSV.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import bases as B
from . import contraction as C
from . import geometry as geo
from . import lame as L
from . import liealg as lie
from .specfun import bessel_j

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CONFIG_ENV = "CONTRACTION_LAB_CONFIG"
SPACES = {"s2": "S2", "h2": "H2", "e2": "E2", "e11": "E11"}

DEFAULTS = {
    "format": "text",
    "R_list": ",".join(str(r) for r in C.DEFAULT_R),
    "samples": str(C.DEFAULT_SAMPLES),
    "seed": str(C.DEFAULT_SEED),
    "h": "1e-3",
    "roundtrip_tol": "1e-12",
    "oracle_tol": "1e-9",
    "expand_tol": "1e-9",
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration

def load_config(path=None):
    """Defaults overlaid with key=value lines from the config file, if any."""
    cfg = dict(DEFAULTS)
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return cfg
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise UsageError("cannot read config %s: %s" % (path, e))
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError("config line %d is not key=value: %r" % (n, line))
        k, v = (s.strip() for s in line.split("=", 1))
        if k not in DEFAULTS:
            raise UsageError("unknown config key %r; valid: %s" % (k, ", ".join(sorted(DEFAULTS))))
        cfg[k] = v
    return cfg


def _floats(text, what):
    try:
        return [float(v) for v in str(text).replace(",", " ").split()]
    except ValueError:
        raise UsageError("%s must be a list of numbers, got %r" % (what, text))


# ---------------------------------------------------------------------------
# serialization with 17 significant digits

def _fmt_float(x):
    if not math.isfinite(x):
        return repr(x)
    return "%.17g" % x


def _plain(obj):
    """Reduce numpy and complex values to JSON-compatible Python objects."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def to_json(obj, indent=2, _level=0):
    """JSON text where every float carries 17 significant digits."""
    obj = _plain(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ["%s%s: %s" % (pad, _json_str(k), to_json(v, indent, _level + 1)) for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(to_json(v, indent, _level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + to_json(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        # strict JSON has no NaN or infinity
        return _fmt_float(obj) if math.isfinite(obj) else "null"
    return _json_str(str(obj))


def _json_str(s):
    return json.dumps(s, ensure_ascii=False)


def _flatten(obj, prefix=""):
    obj = _plain(obj)
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, "%s.%s" % (prefix, k) if prefix else k)
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, "%s[%d]" % (prefix, i))
    else:
        yield prefix, obj


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v)
    if v is None:
        return "-"
    return str(v)


def to_text(record):
    rows = [(k, _cell(v)) for k, v in _flatten(record)]
    w = max(len(k) for k, _ in rows) if rows else 0
    return "\n".join("%-*s  %s" % (w, k, v) for k, v in rows)


def to_csv(record):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    table = record.get("table")
    if table:
        cols = list(table[0].keys())
        wr.writerow(cols)
        for row in table:
            wr.writerow([_cell(_plain(row[c])) for c in cols])
    else:
        wr.writerow(["key", "value"])
        for k, v in _flatten(record):
            wr.writerow([k, _cell(v)])
    return buf.getvalue().rstrip("\n")


def render(record, fmt):
    if fmt == "json":
        return to_json(record)
    if fmt == "csv":
        return to_csv(record)
    return to_text(record)


def record(command, inputs, outputs, tolerances=None, passed=None, table=None):
    rec = {"command": command, "inputs": inputs, "outputs": outputs,
           "tolerances": tolerances or {}, "pass": passed}
    if table is not None:
        rec["table"] = table
    return rec


# ---------------------------------------------------------------------------
# commands

def _space(name, radius):
    kind = SPACES.get(name.lower())
    if kind is None:
        raise UsageError("unknown space %r; valid: %s" % (name, ", ".join(SPACES)))
    if kind in ("S2", "H2"):
        return geo.Space(kind, float(radius))
    return geo.Space(kind)


def _chart_params(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError("chart parameter must be key=value, got %r" % item)
        k, v = item.split("=", 1)
        if k == "variant":
            out[k] = v
            continue
        vals = _floats(v, k)
        out[k] = vals[0] if len(vals) == 1 else tuple(vals)
    return out


def cmd_transform(args, cfg):
    space = _space(args.space, args.radius)
    chart = geo.make_chart(space.kind, args.chart, **_chart_params(args.param))
    tol = float(cfg["roundtrip_tol"])
    inputs = {"space": space.kind, "radius": space.radius, "chart": chart.name,
              "params": dict(chart.params)}
    outputs = {}
    passed = None
    if args.to_ambient is not None:
        q = np.asarray(args.to_ambient, dtype=float)
        if q.shape != (2,):
            raise UsageError("--to-ambient takes two chart coordinates")
        signs = None if args.signs is None else np.asarray(args.signs, dtype=float)
        inputs.update(direction="to-ambient", coords=q, signs=args.signs)
        a = geo.to_ambient(space, chart, q, signs=signs)
        outputs["ambient"] = a
        outputs["constraint_residual"] = float(geo.constraint_residual(space, a))
        if args.check_roundtrip:
            back = geo.from_ambient(space, chart, a)
            err = float(np.max(np.abs(np.asarray(back.coords) - q)))
            outputs["roundtrip_residual"] = err
            passed = err < tol
    else:
        a = np.asarray(args.from_ambient, dtype=float)
        if a.shape != (space.ambient_dim,):
            raise UsageError("--from-ambient takes %d ambient coordinates" % space.ambient_dim)
        inputs.update(direction="from-ambient", ambient=a)
        p = geo.from_ambient(space, chart, a)
        outputs["coords"] = list(p.coords)
        if p.signs:
            outputs["signs"] = list(p.signs)
        outputs["constraint_residual"] = float(geo.constraint_residual(space, a))
        if args.check_roundtrip:
            a2 = geo.to_ambient(space, chart, np.asarray(p.coords),
                                signs=np.asarray(p.signs) if p.signs else None)
            err = float(np.max(np.abs(a2 - a)))
            outputs["roundtrip_residual"] = err
            passed = err < tol * max(1.0, float(np.max(np.abs(a))))
    tols = {"roundtrip": tol} if args.check_roundtrip else {}
    return record("transform", inputs, outputs, tols, passed), (passed is False)


def cmd_classify(args, cfg):
    kind = SPACES.get(args.space.lower())
    if kind not in ("E2", "E11"):
        raise UsageError("classification is available for e2 and e11 only")
    Q = lie.QuadraticOperator.from_upper(kind, args.matrix)
    cls = lie.classify(kind, Q)
    out = {"label": cls.label, "separable": cls.separable, "detail": cls.detail,
           "margin": cls.margin}
    if cls.param_name:
        out[cls.param_name] = cls.param
    if kind == "E2":
        I1, I2 = lie.e2_invariants(Q)
        out["I1"], out["I2"] = I1, I2
    inputs = {"space": kind, "upper_triangle": list(args.matrix),
              "basis": "(L, P1, P2)" if kind == "E2" else "(K, P0, P1)"}
    return record("classify", inputs, out, {"classify": lie.TOL}), False


def cmd_lame(args, cfg):
    l, a = args.l, tuple(args.a)
    if l < 0 or l > L.ORACLE_MAX_L:
        raise UsageError("l must lie in 0..%d" % L.ORACLE_MAX_L)
    inputs = {"l": l, "a": list(a), "oracle": args.oracle}
    repeated = len(set(a)) < 3
    if repeated and not args.oracle:
        raise UsageError("the a-triple must have distinct entries")
    out = {}
    table = []
    passed = None
    tol = float(cfg["oracle_tol"])
    if not repeated:
        spec = L.all_eigenvalues(l, a)
        lams = []
        for al in sorted(spec):
            for v in spec[al]:
                table.append({"alpha": "".join(map(str, al)), "lambda": v, "q": L.q_from_lambda(v)})
                lams.append(v)
        out["count"] = len(lams)
        out["expected_count"] = 2 * l + 1
    if args.oracle:
        oracle = L.oracle_q_spectrum(l, a)
        out["oracle_spectrum"] = oracle
        if not repeated:
            q = sorted(L.q_from_lambda(v) for v in lams)
            dev = float(np.max(np.abs(np.asarray(q) - np.asarray(oracle))))
            out["max_deviation"] = dev
            passed = dev < tol and len(q) == 2 * l + 1
        else:
            out["secular"] = "unavailable for repeated parameters"
    rec = record("lame", inputs, out, {"oracle": tol} if args.oracle else {}, passed, table or None)
    return rec, passed is False


def _qn(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError("quantum number must be key=value, got %r" % item)
        k, v = item.split("=", 1)
        out[k] = float(v)
    return out


def _need(qn, *keys):
    miss = [k for k in keys if k not in qn]
    if miss:
        raise UsageError("missing quantum numbers: %s" % ", ".join(miss))


def _integer(qn, key):
    v = qn[key]
    if v != int(v):
        raise UsageError("%s must be an integer" % key)
    return int(v)


def cmd_eval_basis(args, cfg):
    space = _space(args.space, args.radius)
    qn = _qn(args.qn)
    point = tuple(args.point)
    kind, chart = space.kind, args.basis
    R = space.radius
    if kind == "S2" and chart in ("spherical", "spherical_prime", "spherical_dprime"):
        _need(qn, "l", "m")
        l, m = _integer(qn, "l"), _integer(qn, "m")
        bf = B.sphere_basis(l, m, R, chart)
    elif kind == "H2" and chart == "pseudo_spherical":
        _need(qn, "rho", "m")
        bf = B.pseudospherical_basis(qn["rho"], _integer(qn, "m"), R)
    elif kind == "H2" and chart == "equidistant":
        _need(qn, "rho", "lam")
        bf = B.equidistant_basis(qn["rho"], qn["lam"], R)
    elif kind in ("E2", "E11") and chart in B.FLAT_CHARTS[kind]:
        keys = {("E2", "cartesian"): ("k1", "k2"), ("E2", "polar"): ("k", "m"),
                ("E11", "cartesian"): ("k0", "k1"), ("E11", "pseudo_polar"): ("k", "lam")}[(kind, chart)]
        _need(qn, *keys)
        bf = B.flat_basis_function(kind, chart, **qn)
    else:
        raise UsageError("no basis %s on %s" % (chart, kind))
    value = complex(bf(point))
    out = {"value": value, "eigenvalue": bf.eigenvalue, "normalization": bf.normalization}
    passed = None
    tols = {}
    if args.residual:
        h = float(cfg["h"])
        target = args.target.upper() if args.target else None
        if space.curved:
            c = geo.make_chart(kind, chart)
            a = geo.to_ambient(space, c, np.asarray(point, dtype=float))
            x = geo.beltrami_project(space, a, target)
        elif chart == "cartesian":
            x = np.asarray(point, dtype=float)
        else:
            x = geo.to_ambient(space, geo.make_chart(kind, chart), np.asarray(point, dtype=float))
        res = B.helmholtz_residual(space, bf, bf.eigenvalue, x, h=h, target=target)
        out["helmholtz_residual"] = res
        tols = {"h": h}
    inputs = {"space": kind, "radius": R, "basis": chart, "qn": qn, "point": list(point)}
    return record("eval-basis", inputs, out, tols, passed), False


def cmd_expand(args, cfg):
    tol = float(cfg["expand_tol"])
    if args.kind == "plane-wave":
        exact = complex(np.exp(1j * args.k * args.r * math.cos(args.delta)))
        part = B.plane_wave_partial(args.k, args.r, args.delta, args.M)
        err = abs(part - exact)
        inputs = {"k": args.k, "r": args.r, "delta": args.delta, "M": args.M}
        out = {"partial_sum": part, "exact": exact, "error": err}
        if args.m is not None:
            q = B.bessel_via_quadrature(args.m, args.k, args.r)
            jm = bessel_j(args.m, args.k * args.r)
            out["bessel_quadrature"] = q
            out["bessel_direct"] = jm
            err = max(err, abs(q - jm))
        passed = err < tol
    elif args.kind == "interbasis":
        th, ph = args.theta, args.phi
        u = (math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th))
        res = B.interbasis_residual(args.l, u)
        inputs = {"l": args.l, "theta": th, "phi": ph}
        out = {"residual": res}
        passed = res < tol
    else:
        if args.m2 is None or args.m1 is None:
            raise UsageError("wigner needs --m2 and --m1")
        vals = {m: B.wigner_d_halfpi(args.l, args.m2, args.m1, m) for m in ("hyp3f2", "hyp2f1", "integral")}
        spread = max(abs(vals[a] - vals[b]) for a in vals for b in vals)
        inputs = {"l": args.l, "m2": args.m2, "m1": args.m1}
        out = dict(vals, spread=spread)
        passed = spread < tol
    return record("expand", dict(inputs, kind=args.kind), out, {"expand": tol}, passed), not passed


def cmd_verify(args, cfg):
    ids = C.case_ids()
    if args.list:
        return record("verify", {"list": True}, {"ids": ids}), False
    if args.all:
        chosen = sorted(ids)
    else:
        if not args.ids:
            raise UsageError("give case ids or --all; valid ids:\n  " + "\n  ".join(ids))
        bad = [i for i in args.ids if i not in ids]
        if bad:
            raise UsageError("unknown case id %s; valid ids:\n  %s" % (", ".join(bad), "\n  ".join(ids)))
        chosen = sorted(set(args.ids))
    R_list = _floats(args.R_list if args.R_list is not None else cfg["R_list"], "R list")
    samples = int(args.samples if args.samples is not None else cfg["samples"])
    seed = int(args.seed if args.seed is not None else cfg["seed"], 0)
    reports = [C.run_case(i, R_list, samples, seed) for i in chosen]
    dicts = [r.to_dict() for r in reports]
    table = [{"id": r.id, "R": R, "max_err": e, "slope": r.slope, "pass": r.passed}
             for r in reports for R, e in zip(r.R, r.max_err)]
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(to_json(dicts) + "\n")
    ok = all(r.passed for r in reports)
    inputs = {"ids": chosen, "R_list": R_list, "samples": samples, "seed": seed}
    tols = {"final_error": C.PASS_ERROR, "slope": C.PASS_SLOPE}
    return record("verify", inputs, {"reports": dicts}, tols, ok, table), not ok


# ---------------------------------------------------------------------------
# argument parsing

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None,
                        help="output format (default from config, else text)")
    common.add_argument("--config", default=None, help="key=value config file")
    p = argparse.ArgumentParser(prog="contraction-lab",
                                description="Contractions of curved two-dimensional spaces to flat ones.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", parents=[common], help="map points between a chart and ambient space")
    t.add_argument("--space", required=True)
    t.add_argument("--chart", required=True)
    t.add_argument("--radius", type=float, default=1.0)
    t.add_argument("--param", action="append", help="chart parameter key=value (lists comma-separated)")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--to-ambient", nargs=2, type=float, metavar=("Q1", "Q2"))
    g.add_argument("--from-ambient", nargs="+", type=float, metavar="A")
    t.add_argument("--signs", nargs=3, type=float)
    t.add_argument("--check-roundtrip", action="store_true")
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("classify", parents=[common], help="canonical class of a quadratic operator")
    c.add_argument("--space", required=True, help="e2 or e11")
    c.add_argument("matrix", nargs=6, type=float, help="upper triangle A00 A01 A02 A11 A12 A22")
    c.set_defaults(func=cmd_classify)

    m = sub.add_parser("lame", parents=[common], help="Lame separation constants")
    m.add_argument("l", type=int)
    m.add_argument("a", nargs=3, type=float)
    m.add_argument("--oracle", action="store_true", help="compare against the dense spectrum")
    m.set_defaults(func=cmd_lame)

    e = sub.add_parser("eval-basis", parents=[common], help="evaluate a separated basis function")
    e.add_argument("--space", required=True)
    e.add_argument("--basis", required=True, help="chart name of the basis")
    e.add_argument("--radius", type=float, default=1.0)
    e.add_argument("--qn", action="append", help="quantum number key=value")
    e.add_argument("--target", default=None, help="flat plane for the residual on H2 (e2 or e11)")
    e.add_argument("--residual", action="store_true", help="also report the Helmholtz residual")
    e.add_argument("point", nargs=2, type=float)
    e.set_defaults(func=cmd_eval_basis)

    x = sub.add_parser("expand", parents=[common], help="plane-wave and interbasis expansion checks")
    x.add_argument("kind", choices=("plane-wave", "interbasis", "wigner"))
    x.add_argument("--k", type=float, default=1.0)
    x.add_argument("--r", type=float, default=1.0)
    x.add_argument("--delta", type=float, default=0.0)
    x.add_argument("--M", type=int, default=50)
    x.add_argument("--m", type=int, default=None, help="also recover J_m by quadrature")
    x.add_argument("--l", type=int, default=2)
    x.add_argument("--theta", type=float, default=0.7)
    x.add_argument("--phi", type=float, default=0.3)
    x.add_argument("--m2", type=int)
    x.add_argument("--m1", type=int)
    x.set_defaults(func=cmd_expand)

    v = sub.add_parser("verify", parents=[common], help="run contraction cases")
    v.add_argument("ids", nargs="*")
    v.add_argument("--all", action="store_true")
    v.add_argument("--list", action="store_true", help="list case ids")
    v.add_argument("--R-list", dest="R_list", default=None, help="comma-separated radii")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--seed", default=None)
    v.add_argument("--json", default=None, metavar="FILE", help="write reports as JSON")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        fmt = args.format or cfg["format"]
        if fmt not in ("text", "json", "csv"):
            raise UsageError("format must be text, json or csv")
        rec, failed = args.func(args, cfg)
    except (UsageError, geo.GeometryError, L.LameError, lie.TrivialOperator,
            C.ContractionError, ValueError) as e:
        print("contraction-lab %s: %s" % (args.command, e), file=sys.stderr)
        return EXIT_USAGE
    print(render(rec, fmt))
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
