"""alist and JSON readers and writers for codes, complexes and reports.

alist follows MacKay's layout for the parity-check matrix H = delta^T:

    N M                      bits, checks
    max_bit_deg max_chk_deg
    N bit degrees
    M check degrees
    N lines: checks of each bit (1-indexed, zero padding allowed)
    M lines: bits of each check
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

from .chain import ChainComplex, validate
from .code import ClassicalCode
from .gf2 import GF2Matrix

__all__ = [
    "SCHEMA_VERSION",
    "ParseError",
    "CodeFile",
    "parse_alist",
    "emit_alist",
    "matrix_to_json",
    "matrix_from_json",
    "code_to_json",
    "complex_to_json",
    "css_to_json",
    "parse_json",
    "load_codefile",
    "emit_report",
    "schema_path",
]

SCHEMA_VERSION = 1
_SCHEMA_DIR = Path(__file__).with_name("schemas")


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based, or None for JSON structure errors."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class CodeFile:
    format: str
    code: Optional[ClassicalCode] = None
    plaquettes: Optional[GF2Matrix] = None
    complex: Optional[ChainComplex] = None
    css: Optional[tuple[GF2Matrix, GF2Matrix]] = None

    def classical(self) -> ClassicalCode:
        """The classical code carried by the file, or delta_1 of its complex."""
        if self.code is not None:
            return self.code
        if self.complex is not None:
            return ClassicalCode(self.complex.boundary(1))
        raise ValueError("file carries no classical code")

    def two_complex(self) -> Optional[ChainComplex]:
        if self.complex is not None and self.complex.D == 2:
            return self.complex
        if self.code is not None and self.plaquettes is not None:
            return ChainComplex([self.plaquettes, self.code.delta])
        return None


# alist


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line.strip()!r}", lineno) from None


def parse_alist(text: str) -> ClassicalCode:
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    pos = 0
    last = lines[-1][0] if lines else 0

    def take(count: Optional[int], what: str) -> tuple[int, list[int]]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"file ends before {what}", last + 1)
        lineno, ln = lines[pos]
        pos += 1
        vals = _ints(ln, lineno)
        if count is not None and len(vals) != count:
            raise ParseError(f"{what}: expected {count} values, got {len(vals)}", lineno)
        return lineno, vals

    ln, (n, m) = take(2, "header")
    if n < 1 or m < 0:
        raise ParseError(f"bad dimensions {n} x {m}", ln)
    ln, (max_b, max_c) = take(2, "max degrees")
    ln_bd, bit_deg = take(n, "bit degrees")
    ln_cd, chk_deg = take(m, "check degrees")
    if sum(bit_deg) != sum(chk_deg):
        raise ParseError(f"degree sums differ: {sum(bit_deg)} vs {sum(chk_deg)}", ln_cd)
    for deg, mx, lnx, who in ((bit_deg, max_b, ln_bd, "bit"), (chk_deg, max_c, ln_cd, "check")):
        if any(d < 0 for d in deg):
            raise ParseError(f"negative {who} degree", lnx)
        if deg and max(deg) != mx:
            raise ParseError(f"max {who} degree is {max(deg)}, header says {mx}", lnx)

    def adjacency(count: int, degrees: list[int], bound: int, who: str) -> list[tuple[int, list[int]]]:
        out = []
        for j in range(count):
            lineno, vals = take(None, f"{who} {j + 1} adjacency")
            nz = [v for v in vals if v != 0]
            if vals[: len(nz)] != nz:
                raise ParseError("zero padding must come last", lineno)
            if len(nz) != degrees[j]:
                raise ParseError(f"{who} {j + 1} lists {len(nz)} entries, degree is {degrees[j]}", lineno)
            for v in nz:
                if not 1 <= v <= bound:
                    raise ParseError(f"index {v} out of range 1..{bound}", lineno)
            if len(set(nz)) != len(nz):
                raise ParseError(f"{who} {j + 1} repeats an index", lineno)
            out.append((lineno, [v - 1 for v in nz]))
        return out

    bits = adjacency(n, bit_deg, m, "bit")
    checks = adjacency(m, chk_deg, n, "check")
    from_bits = {(i, a) for i, (_, lst) in enumerate(bits) for a in lst}
    from_checks = {(i, a) for a, (_, lst) in enumerate(checks) for i in lst}
    if from_bits != from_checks:
        i, a = min(from_bits ^ from_checks)
        lineno = bits[i][0] if (i, a) in from_bits else checks[a][0]
        raise ParseError(f"bit {i + 1} and check {a + 1} disagree about their edge", lineno)
    if pos != len(lines):
        raise ParseError("trailing content", lines[pos][0])
    delta = GF2Matrix.from_coords(n, m, sorted(from_bits))
    try:
        return ClassicalCode(delta)
    except ValueError as e:
        raise ParseError(str(e)) from None


def emit_alist(c: ClassicalCode) -> str:
    bit_lists = [[a + 1 for a in c.delta.row_support(i)] for i in range(c.n)]
    chk_lists = [[i + 1 for i in c.delta.column_support(a)] for a in range(c.m)]
    max_b = max((len(x) for x in bit_lists), default=0)
    max_c = max((len(x) for x in chk_lists), default=0)

    def pad(lst: list[int], width: int) -> str:
        return " ".join(str(v) for v in lst + [0] * (width - len(lst)))

    out = [f"{c.n} {c.m}", f"{max_b} {max_c}"]
    out.append(" ".join(str(len(x)) for x in bit_lists))
    out.append(" ".join(str(len(x)) for x in chk_lists))
    out += [pad(x, max_b) for x in bit_lists]
    out += [pad(x, max_c) for x in chk_lists]
    return "\n".join(out) + "\n"


# JSON


def matrix_to_json(mat: GF2Matrix) -> dict[str, Any]:
    return {"rows": mat.nrows, "cols": mat.ncols, "entries": [list(e) for e in mat.coords()]}


def matrix_from_json(obj: Any, where: str) -> GF2Matrix:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except KeyError as e:
        raise ParseError(f"{where}: missing {e.args[0]!r}") from None
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 0 and cols >= 0):
        raise ParseError(f"{where}: rows and cols must be non-negative integers")
    if not isinstance(entries, list):
        raise ParseError(f"{where}: entries must be a list")
    seen = set()
    for k, e in enumerate(entries):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise ParseError(f"{where}: entry {k} is not an [i, j] pair")
        i, j = e
        if not (0 <= i < rows and 0 <= j < cols):
            raise ParseError(f"{where}: entry {k} = {e} outside {rows} x {cols}")
        if (i, j) in seen:
            raise ParseError(f"{where}: entry {k} = {e} repeated")
        seen.add((i, j))
    return GF2Matrix.from_coords(rows, cols, [tuple(e) for e in entries])


def _header(kind: str) -> dict[str, Any]:
    return {"schema": f"ldpc-gauge/{kind}", "version": SCHEMA_VERSION}


def code_to_json(c: ClassicalCode, plaquettes: Optional[GF2Matrix] = None) -> dict[str, Any]:
    out = _header("code")
    out["delta"] = matrix_to_json(c.delta)
    if plaquettes is not None:
        out["plaquettes"] = matrix_to_json(plaquettes)
    if c.bit_names is not None:
        out["bit_names"] = list(c.bit_names)
    if c.check_names is not None:
        out["check_names"] = list(c.check_names)
    return out


def complex_to_json(cc: ChainComplex) -> dict[str, Any]:
    out = _header("complex")
    out["level_sizes"] = list(cc.level_sizes)
    out["maps"] = [matrix_to_json(m) for m in cc.maps]
    return out


def css_to_json(x_checks: GF2Matrix, z_checks: GF2Matrix) -> dict[str, Any]:
    out = _header("css")
    out["x_checks"] = matrix_to_json(x_checks)
    out["z_checks"] = matrix_to_json(z_checks)
    return out


def parse_json(text: str) -> CodeFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    schema = obj.get("schema")
    if obj.get("version") != SCHEMA_VERSION:
        raise ParseError(f"unsupported version {obj.get('version')!r}")
    try:
        if schema == "ldpc-gauge/code":
            delta = matrix_from_json(obj.get("delta"), "delta")
            code = ClassicalCode(delta, obj.get("bit_names"), obj.get("check_names"))
            plaq = None
            if "plaquettes" in obj:
                plaq = matrix_from_json(obj["plaquettes"], "plaquettes")
                if plaq.nrows != code.m:
                    raise ParseError("plaquettes need one row per check")
                for col, syn in enumerate((code.delta @ plaq).columns):
                    if syn:
                        raise ParseError(f"plaquette {col} is not a redundancy")
            return CodeFile("json", code=code, plaquettes=plaq)
        if schema == "ldpc-gauge/complex":
            maps = obj.get("maps")
            if not isinstance(maps, list) or not maps:
                raise ParseError("maps must be a non-empty list")
            cc = ChainComplex([matrix_from_json(m, f"maps[{k}]") for k, m in enumerate(maps)])
            if "level_sizes" in obj and list(cc.level_sizes) != obj["level_sizes"]:
                raise ParseError("level_sizes disagree with the maps")
            if not validate(cc):
                raise ParseError("consecutive maps do not compose to zero")
            return CodeFile("json", complex=cc)
        if schema == "ldpc-gauge/css":
            xs = matrix_from_json(obj.get("x_checks"), "x_checks")
            zs = matrix_from_json(obj.get("z_checks"), "z_checks")
            if xs.ncols != zs.ncols:
                raise ParseError("X and Z checks act on different qubit counts")
            if not (xs @ zs.T).is_zero():
                raise ParseError("X and Z checks do not commute")
            return CodeFile("json", complex=ChainComplex.from_css(xs, zs), css=(xs, zs))
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None
    raise ParseError(f"unknown schema {schema!r}")


def load_codefile(source: Union[str, Path], text: Optional[str] = None) -> CodeFile:
    """Read a code file; JSON if it starts with '{', alist otherwise."""
    if text is None:
        text = Path(source).read_text()
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return CodeFile("alist", code=parse_alist(text))


def emit_report(analysis: dict[str, Any]) -> str:
    """Stable JSON: sorted keys, two-space indent."""
    return json.dumps(analysis, sort_keys=True, indent=2)


def schema_path(kind: str) -> Path:
    return _SCHEMA_DIR / f"{kind}.schema.json"
