"""Line-oriented input formats, workspace loading and canonical JSON reports.

Formats (blank lines and ``#`` comments are ignored everywhere):

Group file:
    order N            followed by N rows of N space-separated 0-based indices
    perm               followed by one generator per line in cycle notation,
                       e.g. (0 1 2)(3 4); degree is inferred

G-set file:
    size M             followed by M rows of |G| indices (s row, g column -> s.g)

Cocycle file:
    cocycle N=<conductor>
    x y k              meaning alpha(x, y) = zeta_N^k, or
    x y s k            the s-component of a set cocycle
    omitted entries default to exponent 0

Family file:
    family
    label <name> dim <d> [levels d0 d1 ...]
    act <label> t_0 ... t_{|G|-1}       (label.g = t_g; defaults to trivial)
    map <label> <g> e_1 e_2 ...         row-major matrix entries, exact
                                        scalars (zeta(N)^k, rationals) or
                                        decimal complex; may span lines

Reports serialize as canonical JSON: sorted keys, floats at 12 significant
digits, and no timing by default so identical inputs and seeds give
byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field

import numpy as np

from .cocycles import SetCocycle, TwoCocycle
from .cyclotomic import CycScalar, parse_scalar
from .dual_pair import StableFamily
from .groups import FiniteGroup, RightGSet

__all__ = [
    "ParseError",
    "CrossRefError",
    "parse_group_file",
    "parse_gset_file",
    "parse_cocycle_file",
    "parse_family_file",
    "group_to_text",
    "gset_to_text",
    "cocycle_to_text",
    "Workspace",
    "Report",
    "canonical_json",
    "file_digest",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


class CrossRefError(ValueError):
    pass


def _content_lines(text: str):
    """(line_number, stripped_content) pairs, skipping blanks and comments."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(line: str, lineno: int) -> tuple[int, ...] | None:
    """A permutation from cycle notation; None when the line is malformed."""
    chunks = _CYCLE_RE.findall(line)
    if not chunks or _CYCLE_RE.sub("", line).strip():
        raise ParseError(f"bad cycle notation {line!r}", lineno)
    points = []
    cycles = []
    for chunk in chunks:
        cyc = [int(tok) for tok in re.split(r"[\s,]+", chunk.strip()) if tok]
        if any(p < 0 for p in cyc):
            raise ParseError("cycle points must be non-negative", lineno)
        cycles.append(cyc)
        points.extend(cyc)
    degree = max(points) + 1 if points else 1
    perm = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
    return tuple(perm)


def parse_group_file(text: str) -> FiniteGroup:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty group file")
    lineno, header = lines[0]
    tokens = header.split()
    if tokens[0] == "order":
        if len(tokens) != 2 or not tokens[1].isdigit():
            raise ParseError("header must be 'order N'", lineno)
        n = int(tokens[1])
        rows = []
        for ln, line in lines[1:]:
            row = [int(t) for t in line.split()]
            if len(row) != n:
                raise ParseError(f"expected {n} entries per row", ln)
            rows.append(row)
        if len(rows) != n:
            raise ParseError(f"expected {n} rows, found {len(rows)}")
        try:
            return FiniteGroup(rows)
        except ValueError as err:
            raise ParseError(str(err)) from err
    if tokens[0] == "perm":
        perms = []
        degree = 0
        for ln, line in lines[1:]:
            p = _parse_cycles(line, ln)
            perms.append(p)
            degree = max(degree, len(p))
        if not perms:
            raise ParseError("perm group needs at least one generator", lineno)
        perms = [tuple(list(p) + list(range(len(p), degree))) for p in perms]
        try:
            return FiniteGroup.from_permutations(perms)
        except ValueError as err:
            raise ParseError(str(err)) from err
    raise ParseError("group header must be 'order N' or 'perm'", lineno)


def parse_gset_file(text: str, group: FiniteGroup) -> RightGSet:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty G-set file")
    lineno, header = lines[0]
    tokens = header.split()
    if tokens[0] != "size" or len(tokens) != 2 or not tokens[1].isdigit():
        raise ParseError("header must be 'size M'", lineno)
    m = int(tokens[1])
    rows = []
    for ln, line in lines[1:]:
        row = [int(t) for t in line.split()]
        if len(row) != group.order:
            raise ParseError(f"expected {group.order} entries per row", ln)
        rows.append(row)
    if len(rows) != m:
        raise ParseError(f"expected {m} rows, found {len(rows)}")
    try:
        return RightGSet(rows, group)
    except ValueError as err:
        raise CrossRefError(str(err)) from err


def parse_cocycle_file(text: str, group: FiniteGroup, gset: RightGSet | None = None):
    """TwoCocycle from 3-column lines, SetCocycle from 4-column (x y s k)."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty cocycle file")
    lineno, header = lines[0]
    m = re.fullmatch(r"cocycle\s+N=(\d+)", header)
    if not m:
        raise ParseError("header must be 'cocycle N=<conductor>'", lineno)
    conductor = int(m.group(1))
    if conductor < 1:
        raise ParseError("conductor must be positive", lineno)
    arity = None
    entries = []
    for ln, line in lines[1:]:
        toks = line.split()
        if len(toks) not in (3, 4):
            raise ParseError("entries must be 'x y k' or 'x y s k'", ln)
        if arity is None:
            arity = len(toks)
        elif len(toks) != arity:
            raise ParseError("mixed scalar and set cocycle entries", ln)
        try:
            entries.append(tuple(int(t) for t in toks))
        except ValueError:
            raise ParseError("entries must be integers", ln) from None
    if arity is None:
        # no explicit entries: the loaded G-set decides which kind this is
        arity = 4 if gset is not None else 3
    if arity == 4:
        if gset is None:
            raise CrossRefError("set cocycle file needs a G-set")
        exps = np.zeros((gset.size, group.order, group.order), dtype=np.int64)
        for x, y, s, k in entries:
            if not (0 <= x < group.order and 0 <= y < group.order and 0 <= s < gset.size):
                raise CrossRefError(f"cocycle entry ({x},{y},{s}) out of range")
            exps[s, x, y] = k % conductor
        return SetCocycle(group, gset, conductor, exps)
    exps = np.zeros((group.order, group.order), dtype=np.int64)
    for x, y, k in entries:
        if not (0 <= x < group.order and 0 <= y < group.order):
            raise CrossRefError(f"cocycle entry ({x},{y}) out of range")
        exps[x, y] = k % conductor
    return TwoCocycle(group, conductor, exps)


def parse_family_file(text: str, group: FiniteGroup) -> StableFamily:
    lines = _content_lines(text)
    if not lines or lines[0][1].split()[0] != "family":
        raise ParseError("family file must start with 'family'")
    labels: list[str] = []
    dims: list[int] = []
    levels: list[tuple[int, ...]] = []
    act_rows: dict[int, list[int]] = {}
    raw_maps: dict[tuple[int, int], list] = {}
    # first pass: tokenize into statements (map entries may span lines)
    stmts = []
    for ln, line in lines[1:]:
        toks = line.split()
        if toks[0] in ("label", "act", "map"):
            stmts.append([ln, toks])
        else:
            if not stmts:
                raise ParseError(f"unexpected line {line!r}", ln)
            stmts[-1][1].extend(toks)

    def label_index(tok: str, ln: int) -> int:
        if tok in labels:
            return labels.index(tok)
        if tok.isdigit() and int(tok) < len(labels):
            return int(tok)
        raise ParseError(f"unknown label {tok!r}", ln)

    for ln, toks in stmts:
        if toks[0] == "label":
            if len(toks) < 4 or toks[2] != "dim":
                raise ParseError("label line must be 'label <name> dim <d> [levels ...]'", ln)
            name = toks[1]
            d = int(toks[3])
            lev = (d,)
            if len(toks) > 4:
                if toks[4] != "levels":
                    raise ParseError("expected 'levels' after the dimension", ln)
                lev = tuple(int(t) for t in toks[5:])
                if sum(lev) != d:
                    raise ParseError("level dims must sum to the dimension", ln)
            labels.append(name)
            dims.append(d)
            levels.append(lev)
        elif toks[0] == "act":
            l = label_index(toks[1], ln)
            row = [int(t) for t in toks[2:]]
            if len(row) != group.order:
                raise ParseError(f"act row needs {group.order} entries", ln)
            act_rows[l] = row
        elif toks[0] == "map":
            l = label_index(toks[1], ln)
            g = int(toks[2])
            raw_maps[(l, g)] = [ln, toks[3:]]

    if not labels:
        raise ParseError("family declares no labels")
    size = len(labels)
    rows = [act_rows.get(l, [l] * group.order) for l in range(size)]
    try:
        gset = RightGSet(rows, group)
    except ValueError as err:
        raise CrossRefError(f"act rows are not a right action: {err}") from err

    # parse matrix entries; decimal entries switch the whole family to numeric
    numeric = False
    parsed: dict[tuple[int, int], list] = {}
    for (l, g), (ln, toks) in raw_maps.items():
        target = gset.apply(l, group.inverse(g))
        want = dims[target] * dims[l]
        if len(toks) != want:
            raise ParseError(
                f"map {labels[l]} {g} needs {want} entries, found {len(toks)}", ln
            )
        vals = []
        for tok in toks:
            try:
                v = parse_scalar(tok)
            except ValueError as err:
                raise ParseError(str(err), ln) from err
            if isinstance(v, complex):
                numeric = True
            vals.append(v)
        parsed[(l, g)] = [dims[target], dims[l], vals]

    maps = {}
    for l in range(size):
        for g in range(group.order):
            if (l, g) in parsed:
                rows_n, cols_n, vals = parsed[(l, g)]
                if numeric:
                    flat = [v if isinstance(v, complex) else v.embed() for v in vals]
                    maps[(l, g)] = np.array(flat, dtype=complex).reshape(rows_n, cols_n)
                else:
                    it = iter(vals)
                    maps[(l, g)] = [[next(it) for _ in range(cols_n)] for _ in range(rows_n)]
            elif g == group.identity:
                if numeric:
                    maps[(l, g)] = np.eye(dims[l], dtype=complex)
                else:
                    from .exact_linalg import identity_matrix

                    maps[(l, g)] = identity_matrix(dims[l])
            else:
                raise CrossRefError(f"missing map for label {labels[l]}, element {g}")
    try:
        return StableFamily(group, gset, dims, maps, levels=levels)
    except ValueError as err:
        raise CrossRefError(str(err)) from err


# -- writers (used by the demos and round-trip tests) ---------------------------


def group_to_text(G: FiniteGroup) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in G.mul]
    return f"order {G.order}\n" + "\n".join(rows) + "\n"


def gset_to_text(S: RightGSet) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in S.action]
    return f"size {S.size}\n" + "\n".join(rows) + "\n"


def cocycle_to_text(alpha) -> str:
    out = [f"cocycle N={alpha.n}"]
    if isinstance(alpha, TwoCocycle):
        for x in range(alpha.group.order):
            for y in range(alpha.group.order):
                k = int(alpha.exps[x, y])
                if k:
                    out.append(f"{x} {y} {k}")
    else:
        for s in range(alpha.gset.size):
            for x in range(alpha.group.order):
                for y in range(alpha.group.order):
                    k = int(alpha.exps[s, x, y])
                    if k:
                        out.append(f"{x} {y} {s} {k}")
    return "\n".join(out) + "\n"


# -- workspace ------------------------------------------------------------------


def file_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class Workspace:
    group: FiniteGroup | None = None
    gset: RightGSet | None = None
    cocycle: TwoCocycle | None = None
    set_cocycle: SetCocycle | None = None
    family: StableFamily | None = None
    digests: dict = field(default_factory=dict)
    paths: dict = field(default_factory=dict)

    @staticmethod
    def load(group=None, gset=None, cocycle=None, family=None) -> "Workspace":
        """Load and cross-link the given file paths."""
        ws = Workspace()

        def read(path, kind):
            with open(path, "rb") as fh:
                data = fh.read()
            ws.digests[kind] = file_digest(data)
            ws.paths[kind] = str(path)
            return data.decode()

        if group is not None:
            ws.group = parse_group_file(read(group, "group"))
        if gset is not None:
            if ws.group is None:
                raise CrossRefError("a G-set file needs a group file")
            ws.gset = parse_gset_file(read(gset, "gset"), ws.group)
        if cocycle is not None:
            if ws.group is None:
                raise CrossRefError("a cocycle file needs a group file")
            parsed = parse_cocycle_file(read(cocycle, "cocycle"), ws.group, ws.gset)
            if isinstance(parsed, SetCocycle):
                ws.set_cocycle = parsed
            else:
                ws.cocycle = parsed
        if family is not None:
            if ws.group is None:
                raise CrossRefError("a family file needs a group file")
            ws.family = parse_family_file(read(family, "family"), ws.group)
        return ws


# -- reports ---------------------------------------------------------------------


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    seed: int | None = None
    backend: str | None = None
    tolerance: float | None = None
    warnings: list = field(default_factory=list)
    timing_ms: float | None = None

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "seed": self.seed,
            "backend": self.backend,
            "tolerance": self.tolerance,
            "warnings": list(self.warnings),
            "timing_ms": self.timing_ms,
        }
        return canonical_json(payload)


def _canonicalize(obj):
    if isinstance(obj, dict):
        return {str(k): _canonicalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonicalize(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, complex):
        return {"im": float(f"{obj.imag:.12g}"), "re": float(f"{obj.real:.12g}")}
    if isinstance(obj, CycScalar):
        return repr(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def canonical_json(obj) -> str:
    """Sorted keys, fixed float precision, no whitespace variation."""
    return json.dumps(_canonicalize(obj), sort_keys=True, separators=(",", ":"))
