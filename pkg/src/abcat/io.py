"""Algebra spec files (TOML), canonical re-emission, and structured reports.

A spec file describes either a Nakayama algebra::

    kind = "nakayama"
    field = "Q"
    shape = "cyclic"
    kupisch = [5, 6]

or an algebra by structure constants, one ``[left, right, result, coeff]`` entry per
nonzero basis product, optionally followed by ``[[module]]`` tables listing the
indecomposable modules to work with.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from gmpy2 import mpq

from .algebra import Algebra, build_algebra, nakayama
from .linalg import Field, InputError, Mat
from .modules import Module

SCHEMA_ID = "abcat-report/1"


class SpecError(InputError):
    """Malformed spec file; ``where`` names the position or field."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass
class ModuleSpec:
    label: str
    dims: list
    action: dict  # basis label -> matrix rows (canonical scalars)


@dataclass
class AlgebraSpecFile:
    kind: str
    field: str
    name: str = ""
    shape: str = ""
    kupisch: list = field(default_factory=list)
    labels: list = field(default_factory=list)
    idempotents: list = field(default_factory=list)
    table: list = field(default_factory=list)  # [left, right, result, coeff]
    modules: list = field(default_factory=list)

    def field_obj(self, override: Optional[str] = None) -> Field:
        return Field.parse(override or self.field)

    def build(self, field_override: Optional[str] = None) -> Algebra:
        F = self.field_obj(field_override)
        if self.kind == "nakayama":
            return nakayama(self.kupisch, self.shape, F)
        tbl: dict = {}
        for a, b, c, x in self.table:
            tbl.setdefault((a, b), {})
            tbl[(a, b)][c] = F(tbl[(a, b)].get(c, 0)) + F(_scalar(x))
        return build_algebra(F, self.labels, self.idempotents, tbl, name=self.name)

    def universe(self, alg: Algebra) -> Optional[list]:
        """Explicit module list, or None when the algebra enumerates its own indecomposables."""
        if self.kind == "nakayama":
            return None
        if not self.modules:
            raise InputError("this spec lists no modules; add [[module]] tables for the indecomposables")
        return [build_module(alg, m) for m in self.modules]


def _scalar(x):
    if isinstance(x, bool):
        raise InputError(f"bad scalar {x!r}")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, str):
        try:
            return mpq(x)
        except ValueError:
            raise InputError(f"bad scalar {x!r}") from None
    raise InputError(f"bad scalar {x!r} (use an integer or a string like '-3/2')")


def _canon_scalar(x):
    q = _scalar(x)
    if q.denominator == 1:
        return int(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def build_module(alg: Algebra, ms: ModuleSpec) -> Module:
    F = alg.field
    if len(ms.dims) != alg.nvert:
        raise SpecError(f"dims has {len(ms.dims)} entries, expected {alg.nvert}", f"module {ms.label}")
    blocks = {}
    for lab, rows in ms.action.items():
        if lab not in alg.index:
            raise SpecError(f"unknown basis element {lab!r}", f"module {ms.label}")
        b = alg.index[lab]
        if b in alg.idempotents:
            raise SpecError("idempotents act by identity and must not be listed", f"module {ms.label}")
        r, c = ms.dims[alg.src[b]], ms.dims[alg.tgt[b]]
        if len(rows) != r or any(len(row) != c for row in rows):
            raise SpecError(f"action of {lab} must be a {r}x{c} matrix", f"module {ms.label}")
        blocks[b] = Mat(F, [[F(_scalar(x)) for x in row] for row in rows], c)
    M = Module(alg, ms.dims, blocks, label=ms.label)
    try:
        M.check()
    except InputError as exc:
        raise SpecError(str(exc), f"module {ms.label}") from None
    return M


# -- parsing ------------------------------------------------------------------------------------


def _require(doc: dict, key: str, typ, where: str = ""):
    if key not in doc:
        raise SpecError("missing required field", where or key)
    v = doc[key]
    if not isinstance(v, typ) or isinstance(v, bool) and typ is not bool:
        raise SpecError(f"expected {getattr(typ, '__name__', typ)}", where or key)
    return v


def parse_text(text: str) -> AlgebraSpecFile:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise SpecError(str(exc), "parse error") from None
    return validate(doc)


def parse_spec(path) -> AlgebraSpecFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(exc.strerror or str(exc), str(p)) from None
    return parse_text(text)


_COMMON = {"kind", "field", "name"}
_KEYS = {"nakayama": _COMMON | {"shape", "kupisch"},
         "structure-constants": _COMMON | {"dim", "labels", "idempotents", "table", "module"}}


def validate(doc: dict) -> AlgebraSpecFile:
    kind = _require(doc, "kind", str)
    if kind not in _KEYS:
        raise SpecError("must be 'nakayama' or 'structure-constants'", "kind")
    extra = sorted(set(doc) - _KEYS[kind])
    if extra:
        raise SpecError(f"unknown field for kind {kind!r}", extra[0])
    fld = _require(doc, "field", str)
    try:
        Field.parse(fld)
    except InputError as exc:
        raise SpecError(str(exc), "field") from None
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SpecError("expected str", "name")
    out = AlgebraSpecFile(kind, fld, name)
    if kind == "nakayama":
        shape = _require(doc, "shape", str)
        if shape not in ("linear", "cyclic"):
            raise SpecError("must be 'linear' or 'cyclic'", "shape")
        kup = _require(doc, "kupisch", list)
        if not kup or not all(isinstance(x, int) and not isinstance(x, bool) for x in kup):
            raise SpecError("must be a nonempty list of integers", "kupisch")
        if any(x < 1 for x in kup):
            raise SpecError("kupisch entries >= 1 required", "kupisch")
        out.shape, out.kupisch = shape, list(kup)
        try:
            out.build()
        except InputError as exc:
            raise SpecError(str(exc), "kupisch") from None
        return out
    labels = _require(doc, "labels", list)
    if not all(isinstance(x, str) for x in labels):
        raise SpecError("must be a list of strings", "labels")
    dim = _require(doc, "dim", int)
    if dim != len(labels):
        raise SpecError(f"dim = {dim} but {len(labels)} labels are given", "dim")
    idem = _require(doc, "idempotents", list)
    if not all(isinstance(x, str) for x in idem):
        raise SpecError("must be a list of strings", "idempotents")
    table = _require(doc, "table", list)
    rows = []
    for k, ent in enumerate(table):
        where = f"table[{k}]"
        if not isinstance(ent, list) or len(ent) != 4 or not all(isinstance(x, str) for x in ent[:3]):
            raise SpecError("entries are [left, right, result, coeff]", where)
        try:
            rows.append([ent[0], ent[1], ent[2], _canon_scalar(ent[3])])
        except InputError as exc:
            raise SpecError(str(exc), where) from None
    out.labels, out.idempotents, out.table = list(labels), list(idem), rows
    mods = doc.get("module", [])
    if not isinstance(mods, list):
        raise SpecError("expected an array of tables [[module]]", "module")
    for k, m in enumerate(mods):
        where = f"module[{k}]"
        if not isinstance(m, dict):
            raise SpecError("expected a table", where)
        lab = _require(m, "label", str, f"{where}.label")
        dims = _require(m, "dims", list, f"{where}.dims")
        if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in dims):
            raise SpecError("dims must be nonnegative integers", f"{where}.dims")
        act = m.get("action", {})
        if not isinstance(act, dict):
            raise SpecError("expected a table", f"{where}.action")
        canon = {}
        for key, mat in act.items():
            try:
                canon[key] = [[_canon_scalar(x) for x in row] for row in mat]
            except (InputError, TypeError):
                raise SpecError("matrix entries must be scalars", f"{where}.action.{key}") from None
        out.modules.append(ModuleSpec(lab, list(dims), canon))
    try:
        alg = out.build()
    except InputError as exc:
        raise SpecError(str(exc), "table") from None
    for ms in out.modules:
        build_module(alg, ms)
    return out


# -- canonical emission -----------------------------------------------------------------------------


def _toml_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    raise TypeError(f"cannot emit {v!r}")


def emit_spec(spec: AlgebraSpecFile) -> str:
    """Canonical text: fixed key order, one table entry per line, canonical scalars."""
    lines = [f"kind = {_toml_value(spec.kind)}", f"field = {_toml_value(spec.field)}"]
    if spec.name:
        lines.append(f"name = {_toml_value(spec.name)}")
    if spec.kind == "nakayama":
        lines.append(f"shape = {_toml_value(spec.shape)}")
        lines.append(f"kupisch = {_toml_value(spec.kupisch)}")
        return "\n".join(lines) + "\n"
    lines.append(f"dim = {len(spec.labels)}")
    lines.append(f"labels = {_toml_value(spec.labels)}")
    lines.append(f"idempotents = {_toml_value(spec.idempotents)}")
    lines.append("table = [")
    for ent in spec.table:
        lines.append(f"  {_toml_value(ent)},")
    lines.append("]")
    for ms in spec.modules:
        lines += ["", "[[module]]", f"label = {_toml_value(ms.label)}", f"dims = {_toml_value(ms.dims)}"]
        if ms.action:
            lines += ["", "[module.action]"]
            for key in sorted(ms.action):
                lines.append(f"{_toml_value(key)} = {_toml_value(ms.action[key])}")
    return "\n".join(lines) + "\n"


def nakayama_spec(kupisch, shape: str = "cyclic", field: str = "Q", name: str = "") -> AlgebraSpecFile:
    return AlgebraSpecFile("nakayama", field, name, shape, list(kupisch))


# -- reports ---------------------------------------------------------------------------------------


def plain(obj):
    """JSON-ready copy: exact scalars as integers or 'a/b' strings, tuples as lists."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(x) for x in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if type(obj).__name__ == "mpq":
        if obj.denominator == 1:
            return int(obj.numerator)
        return f"{obj.numerator}/{obj.denominator}"
    if hasattr(obj, "to_json"):
        return plain(obj.to_json())
    return str(obj)


def make_report(command: str, verdict: str, result: dict, params: Optional[dict] = None) -> dict:
    return {"schema": SCHEMA_ID, "command": command, "verdict": verdict,
            "params": plain(params or {}), "result": plain(result)}


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(path: str, report: dict):
    text = dumps_report(report)
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def load_schema() -> dict:
    return json.loads(resources.files("abcat").joinpath("schema/report.schema.json").read_text(encoding="utf-8"))


def render_text(obj, indent: int = 0) -> str:
    """Indented key/value rendering of a structured report (every number comes from it)."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, dict) and (not isinstance(x, list) or _flat(x)) for x in v) and len(v) <= 16
    return False


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)
