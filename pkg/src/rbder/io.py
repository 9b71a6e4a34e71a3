"""JSON problem documents.

One document describes one problem instance::

    {
      "kind": "lie",                       # or "assoc"
      "dim": 2,
      "basis": ["e1", "e2"],
      "structure": [[0, 1, 1, "1"]],       # e_i * e_j has coefficient c at e_k (0-based)
      "weight": "1",
      "delta": [["0", "0"], ["0", "1"]],   # dense, row-major; columns are images
      "R": [["0", "0"], ["0", "-1"]],
      "representation": "adjoint" | {...},
      "bider": {"delta1": ..., "delta2": ..., "phi1": ..., "phi2": ...},
      "deformation": {"order": 2, "terms": [{"gamma": [[i, j, k, c], ...], "delta": ..., "R": ...}]},
      "equivalence": {"phis": [matrix, ...]}
    }

Lie documents list each bracket once with ``i < j``.  A representation
block holds ``space_dim``, ``actions`` (Lie) or ``left``/``right``
(associative, ``right[i]`` is ``m -> m e_i``), and ``delta_V``/``delta_M``
and ``T``.  Only ``kind`` and ``dim`` are required; maps default to zero,
the weight to 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .cochains import AssCochain, LieCochain
from .deformation import EquivalenceData, FormalDeformationAss, FormalDeformationLie
from .linalg import Matrix, format_rational, parse_rational
from .structures import (
    AssBimodule,
    AssocAlgebra,
    LieAlgebra,
    LieBiDerPair,
    LieRep,
    RBAssDerPair,
    RBAssDerRep,
    RBLieDerPair,
    RBLieDerRep,
)

__all__ = ["InputError", "InputDocument", "RepBlock", "BiderBlock", "DeformationBlock", "load_document", "parse_document", "parse_text", "dumps_json"]

KINDS = ("lie", "assoc")


class InputError(ValueError):
    """Malformed document; the message names the offending field."""


def _scalar(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{where}: scalar must be a string like \"p/q\" or an integer, got {x!r}")
    try:
        return parse_rational(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: malformed scalar {x!r}") from exc


def _int(x, where: str, lo: int = 0, hi: int | None = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    if x < lo or (hi is not None and x >= hi):
        rng = f"{lo}..{hi - 1}" if hi is not None else f">= {lo}"
        raise InputError(f"{where}: index {x} out of range {rng}")
    return x


def _matrix(x, n: int, where: str, ncols: int | None = None) -> Matrix:
    ncols = n if ncols is None else ncols
    if not isinstance(x, list) or len(x) != n:
        raise InputError(f"{where}: expected {n} rows")
    rows = []
    for i, row in enumerate(x):
        if not isinstance(row, list) or len(row) != ncols:
            raise InputError(f"{where}[{i}]: expected {ncols} entries")
        rows.append([_scalar(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    return Matrix(rows, ncols)


def dumps_json(obj, indent: int = 2) -> str:
    """Deterministic JSON: sorted keys, lists of scalars kept on one line."""

    def flat(x):
        return not isinstance(x, (dict, list))

    def emit(x, level):
        pad, inner = " " * (indent * level), " " * (indent * (level + 1))
        if isinstance(x, dict):
            if not x:
                return "{}"
            items = [f"{inner}{json.dumps(k)}: {emit(x[k], level + 1)}" for k in sorted(x)]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(x, list):
            if all(flat(v) for v in x):
                return "[" + ", ".join(json.dumps(v) for v in x) + "]"
            return "[\n" + ",\n".join(inner + emit(v, level + 1) for v in x) + "\n" + pad + "]"
        return json.dumps(x)

    return emit(obj, 0) + "\n"


def _dump_matrix(m: Matrix) -> list:
    return [[format_rational(v) for v in row] for row in m.tolist()]


def _triples(x, dim: int, where: str, alternating: bool) -> tuple:
    if not isinstance(x, list):
        raise InputError(f"{where}: expected a list of [i, j, k, c] entries")
    acc: dict = {}
    for t, entry in enumerate(x):
        here = f"{where}[{t}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise InputError(f"{here}: expected [i, j, k, c]")
        i, j, k = (_int(entry[p], f"{here}[{p}]", 0, dim) for p in range(3))
        if alternating and i >= j:
            raise InputError(f"{here}: Lie entries need i < j (got {i}, {j})")
        acc[(i, j, k)] = acc.get((i, j, k), 0) + _scalar(entry[3], f"{here}[3]")
    return tuple((i, j, k, c) for (i, j, k), c in sorted(acc.items()) if c)


def _dump_triples(ts) -> list:
    return [[i, j, k, format_rational(c)] for i, j, k, c in ts]


def _get(obj: dict, key: str, where: str, required: bool = False):
    if key not in obj:
        if required:
            raise InputError(f"{where}: missing field {key!r}")
        return None
    return obj[key]


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise InputError(f"{where}: unknown field(s) {', '.join(extra)}")


@dataclass(frozen=True)
class RepBlock:
    space_dim: int
    actions: tuple = ()  # Lie: rho(e_i)
    left: tuple = ()  # associative
    right: tuple = ()
    delta_V: Matrix | None = None
    T: Matrix | None = None


@dataclass(frozen=True)
class BiderBlock:
    delta1: Matrix
    delta2: Matrix
    phi1: Matrix | None = None
    phi2: Matrix | None = None


@dataclass(frozen=True)
class DeformationBlock:
    order: int
    gammas: tuple  # per order: tuple of (i, j, k, c)
    deltas: tuple
    Rs: tuple


@dataclass(frozen=True)
class InputDocument:
    kind: str
    dim: int
    basis: tuple
    structure: tuple
    weight: Fraction
    delta: Matrix
    R: Matrix
    representation: RepBlock | str | None = None
    bider: BiderBlock | None = None
    deformation: DeformationBlock | None = None
    equivalence: tuple | None = None
    name: str = field(default="", compare=False)

    @property
    def is_lie(self) -> bool:
        return self.kind == "lie"

    # ---- structures -------------------------------------------------

    def algebra(self):
        cls = LieAlgebra if self.is_lie else AssocAlgebra
        return cls(self.dim, self.structure, self.basis)

    def pair(self):
        """The validated pair; raises ``StructureError`` on a failed axiom."""
        cls = RBLieDerPair if self.is_lie else RBAssDerPair
        return cls(self.algebra(), self.delta, self.R, self.weight)

    def representation_for(self, pair):
        """Representation object over ``pair`` (adjoint when the block is absent)."""
        blk = self.representation
        if blk is None or blk == "adjoint":
            return pair.adjoint_rep()
        m = blk.space_dim
        if self.is_lie:
            return RBLieDerRep(LieRep(pair.algebra, list(blk.actions), m), blk.delta_V, blk.T)
        return RBAssDerRep(AssBimodule(pair.algebra, list(blk.left), list(blk.right), m), blk.delta_V, blk.T)

    def bider_pair(self) -> LieBiDerPair:
        if self.bider is None:
            raise InputError("document has no bider block")
        return LieBiDerPair(self.algebra(), self.bider.delta1, self.bider.delta2)

    def formal_deformation(self, pair):
        blk = self.deformation
        if blk is None:
            raise InputError("document has no deformation block")
        cc = LieCochain if self.is_lie else AssCochain
        gammas = []
        for ts in blk.gammas:
            vals: dict = {}
            for i, j, k, c in ts:
                vec = list(vals.get((i, j), (Fraction(0),) * self.dim))
                vec[k] += c
                vals[(i, j)] = tuple(vec)
            gammas.append(cc(2, self.dim, self.dim, vals))
        cls = FormalDeformationLie if self.is_lie else FormalDeformationAss
        return cls(pair, gammas, list(blk.deltas), list(blk.Rs), blk.order)

    def equivalence_data(self) -> EquivalenceData:
        if self.equivalence is None:
            raise InputError("document has no equivalence block")
        return EquivalenceData(self.equivalence)

    # ---- serialization ------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "dim": self.dim,
            "basis": list(self.basis),
            "structure": _dump_triples(self.structure),
            "weight": format_rational(self.weight),
            "delta": _dump_matrix(self.delta),
            "R": _dump_matrix(self.R),
        }
        rep = self.representation
        if rep == "adjoint":
            out["representation"] = "adjoint"
        elif rep is not None:
            blk = {"space_dim": rep.space_dim}
            if self.is_lie:
                blk["actions"] = [_dump_matrix(a) for a in rep.actions]
                blk["delta_V"] = _dump_matrix(rep.delta_V)
            else:
                blk["left"] = [_dump_matrix(a) for a in rep.left]
                blk["right"] = [_dump_matrix(a) for a in rep.right]
                blk["delta_M"] = _dump_matrix(rep.delta_V)
            blk["T"] = _dump_matrix(rep.T)
            out["representation"] = blk
        if self.bider is not None:
            b = self.bider
            blk = {"delta1": _dump_matrix(b.delta1), "delta2": _dump_matrix(b.delta2)}
            if b.phi1 is not None:
                blk["phi1"] = _dump_matrix(b.phi1)
                blk["phi2"] = _dump_matrix(b.phi2)
            out["bider"] = blk
        if self.deformation is not None:
            d = self.deformation
            out["deformation"] = {
                "order": d.order,
                "terms": [
                    {"gamma": _dump_triples(g), "delta": _dump_matrix(dl), "R": _dump_matrix(r)}
                    for g, dl, r in zip(d.gammas, d.deltas, d.Rs)
                ],
            }
        if self.equivalence is not None:
            out["equivalence"] = {"phis": [_dump_matrix(p) for p in self.equivalence]}
        return out

    def dumps(self) -> str:
        return dumps_json(self.to_dict())


def _parse_rep(raw, kind: str, dim: int) -> RepBlock | str:
    where = "representation"
    if raw == "adjoint":
        return "adjoint"
    lie = kind == "lie"
    dkey = "delta_V" if lie else "delta_M"
    allowed = ("space_dim", "actions", dkey, "T") if lie else ("space_dim", "left", "right", dkey, "T")
    _check_keys(raw, allowed, where)
    m = _int(_get(raw, "space_dim", where, True), f"{where}.space_dim")

    def mats(key):
        xs = _get(raw, key, where)
        if xs is None:
            return tuple(Matrix.zeros(m, m) for _ in range(dim))
        if not isinstance(xs, list) or len(xs) != dim:
            raise InputError(f"{where}.{key}: expected {dim} matrices, one per basis element")
        return tuple(_matrix(a, m, f"{where}.{key}[{i}]") for i, a in enumerate(xs))

    def opt(key):
        x = _get(raw, key, where)
        return Matrix.zeros(m, m) if x is None else _matrix(x, m, f"{where}.{key}")

    if lie:
        return RepBlock(m, actions=mats("actions"), delta_V=opt(dkey), T=opt("T"))
    return RepBlock(m, left=mats("left"), right=mats("right"), delta_V=opt(dkey), T=opt("T"))


def _parse_deformation(raw, kind: str, dim: int) -> DeformationBlock:
    where = "deformation"
    _check_keys(raw, ("order", "terms"), where)
    terms = _get(raw, "terms", where) or []
    if not isinstance(terms, list):
        raise InputError(f"{where}.terms: expected a list")
    order = _get(raw, "order", where)
    order = len(terms) if order is None else _int(order, f"{where}.order")
    if len(terms) > order:
        raise InputError(f"{where}.terms: {len(terms)} terms exceed order {order}")
    gs, ds, rs = [], [], []
    for t, term in enumerate(terms):
        here = f"{where}.terms[{t}]"
        _check_keys(term, ("gamma", "mu", "delta", "R"), here)
        g = term.get("gamma", term.get("mu", []))
        gs.append(_triples(g, dim, f"{here}.gamma", kind == "lie"))
        ds.append(_matrix(term["delta"], dim, f"{here}.delta") if "delta" in term else Matrix.zeros(dim, dim))
        rs.append(_matrix(term["R"], dim, f"{here}.R") if "R" in term else Matrix.zeros(dim, dim))
    while len(gs) < order:
        gs.append(())
        ds.append(Matrix.zeros(dim, dim))
        rs.append(Matrix.zeros(dim, dim))
    return DeformationBlock(order, tuple(gs), tuple(ds), tuple(rs))


def parse_document(obj, name: str = "") -> InputDocument:
    """Validate a decoded JSON object and build an :class:`InputDocument`."""
    fields = ("kind", "dim", "basis", "structure", "weight", "delta", "R", "representation", "bider", "deformation", "equivalence")
    _check_keys(obj, fields, "document")
    kind = _get(obj, "kind", "document", True)
    if kind not in KINDS:
        raise InputError(f"kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    dim = _int(_get(obj, "dim", "document", True), "dim", 1)
    basis = obj.get("basis")
    if basis is None:
        basis = tuple(f"e{i + 1}" for i in range(dim))
    elif not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise InputError(f"basis: expected {dim} names")
    if len(set(basis)) != len(basis):
        raise InputError("basis: names must be distinct")
    structure = _triples(obj.get("structure", []), dim, "structure", kind == "lie")
    weight = _scalar(obj.get("weight", "0"), "weight")

    def sq(key, raw):
        return Matrix.zeros(dim, dim) if raw is None else _matrix(raw, dim, key)

    rep = obj.get("representation")
    rep = None if rep is None else _parse_rep(rep, kind, dim)
    bider = None
    if "bider" in obj:
        if kind != "lie":
            raise InputError("bider: only Lie documents carry BiDer data")
        raw = obj["bider"]
        _check_keys(raw, ("delta1", "delta2", "phi1", "phi2"), "bider")
        phis = [raw.get("phi1"), raw.get("phi2")]
        if (phis[0] is None) != (phis[1] is None):
            raise InputError("bider: give both phi1 and phi2 or neither")
        if phis[0] is not None:
            if not isinstance(rep, RepBlock):
                raise InputError("bider: phi1/phi2 need an explicit representation block")
            phis = [_matrix(p, rep.space_dim, f"bider.phi{i + 1}") for i, p in enumerate(phis)]
        bider = BiderBlock(
            _matrix(_get(raw, "delta1", "bider", True), dim, "bider.delta1"),
            _matrix(_get(raw, "delta2", "bider", True), dim, "bider.delta2"),
            *phis,
        )
    deformation = None if "deformation" not in obj else _parse_deformation(obj["deformation"], kind, dim)
    equivalence = None
    if "equivalence" in obj:
        raw = obj["equivalence"]
        _check_keys(raw, ("phis",), "equivalence")
        phis = _get(raw, "phis", "equivalence", True)
        if not isinstance(phis, list):
            raise InputError("equivalence.phis: expected a list of matrices")
        equivalence = tuple(_matrix(p, dim, f"equivalence.phis[{i}]") for i, p in enumerate(phis))
    return InputDocument(
        kind,
        dim,
        tuple(basis),
        structure,
        weight,
        sq("delta", obj.get("delta")),
        sq("R", obj.get("R")),
        rep,
        bider,
        deformation,
        equivalence,
        name,
    )


def parse_text(text: str, name: str = "") -> InputDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{name or 'input'}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_document(obj, name)


def load_document(path) -> InputDocument:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{p}: {exc.strerror or exc}") from exc
    return parse_text(text, p.name)
