"""Command-line interface: ``ldpc-gauge <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 unparseable input, 3 an exact
computation exceeded its budget (the partial report is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import kernels
from .barriers import energy_barrier, locally_minimal_distance, profile_csv, soundness
from .chain import classify_redundancies, homology
from .code import canonical_info_bits, code_parameters, duplicate_checks, ldpc_profile, min_weight_logical
from .families import FAMILIES, build_family
from .formats import (
    ParseError,
    code_to_json,
    complex_to_json,
    css_to_json,
    emit_alist,
    emit_report,
    load_codefile,
    matrix_from_json,
)
from .gauge import (
    build_extended_kw,
    css_from_complex,
    css_hamiltonian,
    gauge,
    gauge_fix,
    kw_map,
    quantum_distances,
    rate_identity_check,
    transverse_field_hamiltonian,
)
from .gf2 import DEFAULT_CAP, GF2Matrix, rank
from .pauli import PauliHamiltonian, PauliOperator, ground_space_log2_dim
from .spt import build_cluster, build_kt, dw_map, open_boundaries_1complex, open_boundaries_2complex

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3
_GLOBAL_DEFAULTS = {"threads": 1, "seed": 0, "cap": DEFAULT_CAP, "output": "json"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads for enumeration")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for random families")
    g.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="enumeration budget (steps)")
    g.add_argument("--output", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = _Parser(prog="ldpc-gauge", description="Gauging classical LDPC codes.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="code parameters and redundancy classification")
    p.add_argument("codefile")
    p.add_argument("--locality-bound", type=int, default=8)

    p = sub.add_parser("gauge", parents=[common], help="gauged system, CSS code and dictionary")
    p.add_argument("codefile")
    p.add_argument("--plaquettes", default="auto", help="auto, none, or a JSON matrix file")
    p.add_argument("--couplings", default="1,1,1,1", help="J,g,K,Gamma")
    p.add_argument("--locality-bound", type=int, default=8)

    p = sub.add_parser("dualize", parents=[common], help="generator images of a duality map")
    p.add_argument("codefile")
    p.add_argument("--map", choices=("kw", "dw", "kt"), required=True)
    p.add_argument("--extended", action="store_true", help="full symplectic KW map with ancillas")

    p = sub.add_parser("spt", parents=[common], help="cluster Hamiltonian and edge modes")
    p.add_argument("codefile")
    p.add_argument("--obc", choices=("global", "cycles"), help="cut global redundancies or homology cycles")
    p.add_argument("--locality-bound", type=int, default=4)

    p = sub.add_parser("barrier", parents=[common], help="energy barrier profile and soundness")
    p.add_argument("codefile")
    p.add_argument("--Fmax", type=int)

    p = sub.add_parser("family", parents=[common], help="write a family instance as a code file")
    p.add_argument("name", choices=sorted(FAMILIES))
    p.add_argument("--params", default="", help="comma-separated key=value pairs")
    p.add_argument("--format", choices=("json", "alist"), default="json")
    return parser


# helpers


def _label(op: PauliOperator) -> str:
    return op.to_text(labels=True)


def _parse_params(text: str) -> dict[str, str]:
    out = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _parse_couplings(text: str) -> tuple[Fraction, ...]:
    try:
        vals = tuple(Fraction(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad couplings {text!r}") from None
    if len(vals) != 4:
        raise UsageError("couplings are J,g,K,Gamma")
    return vals


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            out += _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return [(prefix, " ".join(str(v) for v in obj))]
        out = []
        for i, v in enumerate(obj):
            out += _flatten(v, f"{prefix}[{i}]")
        return out
    if obj is None:
        return [(prefix, "null")]
    if isinstance(obj, bool):
        return [(prefix, str(obj).lower())]
    return [(prefix, str(obj))]


def _render(report: dict[str, Any], fmt: str, csv_text: Optional[str]) -> str:
    if fmt == "json":
        return emit_report(report) + "\n"
    if fmt == "csv":
        if csv_text is not None:
            return csv_text
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flatten(report))
        return buf.getvalue()
    return "".join(f"{k}: {v}\n" for k, v in _flatten(report))


def _quantum_label(n: int, k: int, dx: Optional[int], dz: Optional[int]) -> str:
    d = "?" if dx is None or dz is None else str(min(dx, dz))
    return f"[[{n},{k},{d}]]"


# commands


def cmd_analyze(args, cf) -> tuple[dict, bool, Optional[str]]:
    c = cf.classical()
    params = code_parameters(c, args.cap, args.threads)
    prof = ldpc_profile(c)
    info = canonical_info_bits(c)
    cls = classify_redundancies(c, args.locality_bound)
    report: dict[str, Any] = {
        "parameters": {
            "n": c.n,
            "m": c.m,
            "k": params.k,
            "kT": params.kT,
            "d": params.d,
            "d_upper": params.d_upper,
            "d_reason": params.d_reason,
            "label": str(params),
        },
        "ldpc_profile": {
            "max_check_weight": prof.max_check_weight,
            "max_bit_degree": prof.max_bit_degree,
            "duplicate_checks": [list(p) for p in duplicate_checks(c)],
        },
        "logicals": {"info_bits": list(info.indices), "supports": [list(v.support()) for v in info.logicals]},
        "redundancies": {
            "locality_bound": args.locality_bound,
            "local": [list(v.support()) for v in cls.local],
            "global_classes": cls.global_classes,
        },
    }
    cc = cf.two_complex()
    if cc is not None:
        report["homology"] = [
            {"level": q, "betti": homology(cc, q, minimize=False).betti} for q in range(cc.D + 1)
        ]
    return report, params.d_reason == "budget_exceeded", None


def _resolve_plaquettes(args, cf, c) -> tuple[Optional[GF2Matrix], str]:
    choice = args.plaquettes
    if choice == "none":
        return None, "none"
    if choice == "auto":
        cc = cf.two_complex()
        if cc is not None:
            return cc.boundary(2), "embedded"
        local = classify_redundancies(c, args.locality_bound).local
        return GF2Matrix.from_columns(c.m, list(local)), "classified"
    try:
        obj = json.loads(Path(choice).read_text())
    except OSError as e:
        raise UsageError(f"cannot read plaquette file: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno) from None
    return matrix_from_json(obj, "plaquettes"), "file"


def cmd_gauge(args, cf) -> tuple[dict, bool, Optional[str]]:
    c = cf.classical()
    couplings = _parse_couplings(args.couplings)
    plaq, source = _resolve_plaquettes(args, cf, c)
    gs = gauge(c, plaq, couplings)
    report: dict[str, Any] = {
        "parameters": {"n": c.n, "m": c.m, "k": c.k, "kT": c.kT},
        "gauged": {
            "couplings": [str(v) for v in couplings],
            "plaquette_source": source,
            "plaquettes": 0 if plaq is None else plaq.ncols,
            "register_size": gs.register.size,
            "terms": len(gs.hamiltonian),
            "gauss_laws": len(gs.gauss_laws),
            "gauss_law_sweep": True,
        },
    }
    budget = False
    if plaq is not None and plaq.ncols:
        d = css_from_complex(gs.complex)
        dist = quantum_distances(d, args.cap, args.threads)
        budget = d.k_q > 0 and (dist.d_X is None or dist.d_Z is None)
        report["quantum"] = {
            "n": d.n_qubits,
            "k": d.k_q,
            "d_X": dist.d_X,
            "d_Z": dist.d_Z,
            "label": _quantum_label(d.n_qubits, d.k_q, dist.d_X, dist.d_Z),
        }
        report["codes"] = {"k_cl": d.k_cl, "k_cl_tilde": d.k_cl_tilde}
        report["dictionary"] = d.table()
        ri = rate_identity_check(d)
        report["rate_identity"] = {"lhs": ri.lhs, "rhs": ri.rhs, "equal": ri.equal}
        fixed = gauge_fix(gauge(c, plaq, (0, 1, 1, 0)))
        report["gauge_fixed_matches_css"] = fixed == css_hamiltonian(d)
    return report, budget, None


def _map_table(m) -> list[dict[str, str]]:
    rows = []
    for j, lab in enumerate(m.source.labels):
        rows.append({"generator": f"X({lab})", "image": _label(m.x_images[j])})
        rows.append({"generator": f"Z({lab})", "image": _label(m.z_images[j])})
    return rows


def cmd_dualize(args, cf) -> tuple[dict, bool, Optional[str]]:
    c = cf.classical()
    report: dict[str, Any] = {"map": args.map, "extended": bool(args.extended)}
    if args.map == "kw" and not args.extended:
        kw = kw_map(c)
        rows = []
        for a in range(c.m):
            op = PauliOperator(kw.source, 0, c.delta.columns[a])
            rows.append({"generator": _label(op), "image": _label(kw(op))})
        for i in range(c.n):
            op = PauliOperator(kw.source, 1 << i, 0)
            rows.append({"generator": _label(op), "image": _label(kw(op))})
        h = kw.apply_hamiltonian(transverse_field_hamiltonian(c))
        expected = PauliHamiltonian(
            kw.target,
            [(-1, PauliOperator(kw.target, 0, 1 << a)) for a in range(c.m)]
            + [(-1, PauliOperator(kw.target, row, 0)) for row in c.delta.rows],
        )
        report["images"] = rows
        report["verdicts"] = {"transverse_field_maps_to_dual": h == expected}
    elif args.map == "kw":
        ext = build_extended_kw(c)
        report["images"] = _map_table(ext.map)
        report["verdicts"] = {"symplectic": ext.map.form_violation() is None, "register_size": ext.source.size}
    elif args.map == "dw":
        m = dw_map(c)
        cs = build_cluster(c)
        trivial = PauliHamiltonian(
            cs.register,
            [(-1, PauliOperator(cs.register, 0, 1 << (c.n + a))) for a in range(c.m)]
            + [(-1, PauliOperator(cs.register, 1 << i, 0)) for i in range(c.n)],
        )
        report["images"] = _map_table(m)
        report["verdicts"] = {"symplectic": True, "cluster_to_trivial": cs.hamiltonian.map_terms(m) == trivial}
    else:
        kt = build_kt(c)
        mixing = all(
            kt.map(kt.eta_z(r)) == kt.eta_z(r) * kt.z_symmetry(r) for r in range(len(kt.extended.background.ancillas))
        )
        report["images"] = _map_table(kt.map)
        report["verdicts"] = {"symplectic": True, "spt_to_ssb": True, "background_mixing": mixing}
    return report, False, None


def cmd_spt(args, cf) -> tuple[dict, bool, Optional[str]]:
    c = cf.classical()
    cc = cf.two_complex() if args.obc == "cycles" else None
    if args.obc == "cycles" and cc is None:
        raise UsageError("--obc cycles needs a code file with plaquettes or a two-level complex")
    cs = build_cluster(c, cc.boundary(2) if cc is not None else None)
    report: dict[str, Any] = {
        "cluster": {
            "register_size": cs.register.size,
            "terms": len(cs.hamiltonian),
            "log2_degeneracy": ground_space_log2_dim(cs.hamiltonian),
            "x_symmetries": len(cs.x_symmetries),
            "z_symmetries": len(cs.z_symmetries),
        }
    }
    if args.obc == "global":
        ob = open_boundaries_1complex(cs, args.locality_bound)
        report["open"] = {
            "cut_checks": list(ob.dropped_edges),
            "boundary_sites": list(ob.boundary_sites),
            "log2_degeneracy": ob.log2_degeneracy,
            "edge_pairs": [[_label(z), _label(g)] for z, g in ob.edge_pairs],
        }
    elif args.obc == "cycles":
        ob = open_boundaries_2complex(cs, cc)
        b = ob.boundary_code
        report["open"] = {
            "removed_edges": list(ob.removed_edges),
            "removed_sites": list(ob.removed_sites),
            "dangling_edges": list(ob.dropped_edges),
            "boundary_code": {"bits": b.nrows, "checks": b.ncols, "k": b.nrows - rank(b)},
            "log2_degeneracy": ob.log2_degeneracy,
            "matter_pieces": {k: [_label(p) for p in v] for k, v in ob.symmetry_pieces.items() if k.startswith("X")},
        }
    return report, False, None


def cmd_barrier(args, cf) -> tuple[dict, bool, Optional[str]]:
    c = cf.classical()
    if c.k == 0:
        raise UsageError("code has no logicals (k=0)")
    sigma = min_weight_logical(c, args.cap, args.threads)
    weight = sigma.weight if sigma is not None else min(v.weight for v in canonical_info_bits(c).logicals)
    fmax = args.Fmax if args.Fmax is not None else weight // 2
    bp = energy_barrier(c, fmax, args.cap, args.threads)
    sr = soundness(bp) if bp.exact_up_to >= 1 else None
    report: dict[str, Any] = {
        "parameters": {"n": c.n, "m": c.m, "k": c.k},
        "profile": [{"F": F, "E_min": e, "exact": x} for F, e, x in zip(bp.F_values, bp.E_min, bp.exact)],
        "barrier": {
            "logical_weight": bp.logical.weight,
            "logical_is_minimal": bp.logical_is_minimal,
            "method": bp.method,
            "exact_up_to": bp.exact_up_to,
        },
        "soundness": None
        if sr is None
        else {"kappa_lower_empirical": str(sr.kappa_lower_empirical), "d_half": sr.d_half, "F_range": sr.F_range},
    }
    budget = bp.method != "exhaustive" or not bp.logical_is_minimal
    cc = cf.two_complex()
    if cc is not None:
        lm = locally_minimal_distance(cc, min(args.cap, 1 << 24), args.threads)
        dist = quantum_distances(css_from_complex(cc), args.cap, args.threads)
        report["locally_minimal"] = {
            "d_LM": lm.value,
            "reason": lm.reason,
            "d_X": dist.d_X,
            "bound_holds": None if lm.value is None or dist.d_X is None else dist.d_X >= lm.value,
        }
        budget = budget or lm.reason == "budget_exceeded"
    return report, budget, profile_csv(bp)


def cmd_family(args) -> str:
    params: dict[str, Any] = _parse_params(args.params)
    if args.name == "expander":
        params.setdefault("seed", args.seed)
    inst = build_family(args.name, params)
    if args.format == "alist":
        if inst.code is None:
            raise UsageError(f"family {args.name!r} has no classical code to write as alist")
        return emit_alist(inst.code)
    if inst.css is not None:
        obj = css_to_json(*inst.css)
    elif inst.code is not None:
        obj = code_to_json(inst.code, inst.plaquettes)
    else:
        obj = complex_to_json(inst.complex)
    return emit_report(obj) + "\n"


_COMMANDS = {
    "analyze": cmd_analyze,
    "gauge": cmd_gauge,
    "dualize": cmd_dualize,
    "spt": cmd_spt,
    "barrier": cmd_barrier,
}


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Execute a command and return (exit code, stdout text); errors go to stderr."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse has already written usage or help
        return (e.code if isinstance(e.code, int) else EXIT_USAGE), ""
    for k, v in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.threads < 1 or args.cap < 1:
        print("ldpc-gauge: error: --threads and --cap must be positive", file=sys.stderr)
        return EXIT_USAGE, ""
    kernels.set_threads(args.threads)
    try:
        if args.command == "family":
            return EXIT_OK, cmd_family(args)
        try:
            cf = load_codefile(args.codefile)
        except OSError as e:
            raise UsageError(f"cannot read {args.codefile}: {e.strerror}") from None
        report, budget, csv_text = _COMMANDS[args.command](args, cf)
    except ParseError as e:
        print(f"ldpc-gauge: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE, ""
    except (UsageError, ValueError) as e:
        print(f"ldpc-gauge: error: {e}", file=sys.stderr)
        return EXIT_USAGE, ""
    full = {"schema": "ldpc-gauge/report", "version": 1, "command": args.command, "budget_exceeded": budget}
    full.update(report)
    return (EXIT_BUDGET if budget else EXIT_OK), _render(full, args.output, csv_text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out = run(argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
