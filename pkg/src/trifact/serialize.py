"""JSON files for groups, braces, tuples, maps and brace catalogs.

Group:   ``{"order": n, "table": [[...]]}`` or
         ``{"semidirect": {"base": <group>, "actor": <group>, "action": [[...]]}}``
Brace:   ``{"order": n, "add": [[...]], "mul": [[...]]}``
Tuple:   ``{"group": <group>, "K": [...], "H": [...], "E": [...],
           "provenance": {"brace": <brace>, "N": [...]}}`` (provenance optional)
Map:     ``{"images": [...]}``
Catalog: ``{"group": <group>, "braces": [<brace>, ...]}``

Element 0 is the identity everywhere.  Loading always certifies.
"""
from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .braces import SkewBrace, validate_brace
from .errors import FormatError
from .groups import FiniteGroup, SubgroupSet, semidirect_product, validate_group
from .trifact import Provenance, TrifactorisedGroup, associated_brace, recover_eta, validate_trifact


def _table(obj, key, n=None):
    rows = obj.get(key)
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError(f"'{key}' must be a non-empty list of rows")
    size = len(rows)
    if n is not None and size != n:
        raise FormatError(f"'{key}' has {size} rows, expected {n}")
    for r in rows:
        if len(r) != size or not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise FormatError(f"'{key}' must be a square table of integers")
    return np.array(rows, dtype=np.int64)


def _indices(obj, key):
    v = obj.get(key)
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise FormatError(f"'{key}' must be a list of integers")
    return np.array(v, dtype=np.int64)


def _order(obj):
    n = obj.get("order")
    if n is not None and (not isinstance(n, int) or n < 1):
        raise FormatError("'order' must be a positive integer")
    return n


# groups ---------------------------------------------------------------------------

def group_to_dict(G: FiniteGroup) -> dict:
    if G.is_semidirect:
        out = {"semidirect": {"base": group_to_dict(G.base), "actor": group_to_dict(G.actor),
                              "action": G.action.tolist()}}
    else:
        out = {"order": G.order, "table": G.table.tolist()}
    if G.name:
        out["name"] = G.name
    return out


def group_from_dict(obj) -> FiniteGroup:
    if not isinstance(obj, dict):
        raise FormatError("group must be a JSON object")
    if "semidirect" in obj:
        sd = obj["semidirect"]
        if not isinstance(sd, dict) or not {"base", "actor", "action"} <= sd.keys():
            raise FormatError("'semidirect' needs 'base', 'actor' and 'action'")
        K, E = group_from_dict(sd["base"]), group_from_dict(sd["actor"])
        act = sd["action"]
        if not isinstance(act, list) or len(act) != E.order or not all(
                isinstance(r, list) and len(r) == K.order for r in act):
            raise FormatError("'action' must be an |E| x |K| table")
        return semidirect_product(K, E, np.array(act, dtype=np.int64), name=obj.get("name"))
    n = _order(obj)
    return validate_group(_table(obj, "table", n), name=obj.get("name"))


# braces ---------------------------------------------------------------------------

def brace_to_dict(B: SkewBrace) -> dict:
    add, mul = B.tables()
    out = {"order": B.order, "add": add.tolist(), "mul": mul.tolist()}
    if B.name:
        out["name"] = B.name
    return out


def brace_from_dict(obj) -> SkewBrace:
    if not isinstance(obj, dict):
        raise FormatError("brace must be a JSON object")
    n = _order(obj)
    add = _table(obj, "add", n)
    mul = _table(obj, "mul", len(add))
    return validate_brace(add, mul, name=obj.get("name"))


# tuples ---------------------------------------------------------------------------

def trifact_to_dict(T: TrifactorisedGroup) -> dict:
    out = {"group": group_to_dict(T.G), "K": T.K.members.tolist(),
           "H": T.H.members.tolist(), "E": T.E.members.tolist()}
    if T.provenance is not None:
        out["provenance"] = {"brace": brace_to_dict(T.provenance.brace), "N": T.provenance.kernel.members.tolist()}
    return out


def trifact_from_dict(obj) -> TrifactorisedGroup:
    if not isinstance(obj, dict) or "group" not in obj:
        raise FormatError("tuple must be a JSON object with a 'group'")
    G = group_from_dict(obj["group"])
    K, H, E = (_indices(obj, k) for k in ("K", "H", "E"))
    for name, arr in (("K", K), ("H", H), ("E", E)):
        if arr.size == 0 or arr.min() < 0 or arr.max() >= G.order:
            raise FormatError(f"'{name}' has indices outside 0..{G.order - 1}")
    T = validate_trifact(G, K, H, E)
    prov = obj.get("provenance")
    if prov is not None:
        if not isinstance(prov, dict) or "brace" not in prov:
            raise FormatError("'provenance' needs a 'brace'")
        B = brace_from_dict(prov["brace"])
        assoc = associated_brace(T)
        if not B.same_tables(assoc):
            raise FormatError("provenance brace differs from the associated brace")
        N = _indices(prov, "N") if "N" in prov else recover_eta(T, B).kernel.members
        eta = recover_eta(T, B)
        if not np.array_equal(np.unique(N), eta.kernel.members):
            raise FormatError("provenance kernel differs from K n H")
        T.provenance = Provenance(B, SubgroupSet(B.mul, eta.kernel.members))
    return T


# catalogs and maps -------------------------------------------------------------

def catalog_to_dict(G: FiniteGroup, braces) -> dict:
    return {"group": group_to_dict(G), "braces": [brace_to_dict(B) for B in braces]}


def catalog_from_dict(obj) -> tuple:
    if not isinstance(obj.get("braces"), list):
        raise FormatError("'braces' must be a list")
    G = group_from_dict(obj["group"]) if "group" in obj else None
    return G, [brace_from_dict(b) for b in obj["braces"]]


def map_from_dict(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise FormatError("map must be a JSON object")
    return _indices(obj, "images")


# files --------------------------------------------------------------------------

def kind_of(obj) -> str:
    if not isinstance(obj, dict):
        raise FormatError("top level must be a JSON object")
    if "braces" in obj:
        return "catalog"
    if "K" in obj:
        return "trifact"
    if "add" in obj or "mul" in obj:
        return "brace"
    if "images" in obj:
        return "map"
    if "table" in obj or "semidirect" in obj:
        return "group"
    raise FormatError("cannot tell what kind of object the file holds")


_READERS = {
    "group": group_from_dict,
    "brace": brace_from_dict,
    "trifact": trifact_from_dict,
    "catalog": catalog_from_dict,
    "map": map_from_dict,
}


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def load(path, expect=None) -> tuple:
    """``(kind, object)``; ``expect`` restricts the accepted kinds."""
    obj = read_json(path)
    kind = kind_of(obj)
    if expect is not None and kind not in (expect if isinstance(expect, (tuple, list)) else (expect,)):
        raise FormatError(f"{path} holds a {kind}, expected {expect}")
    return kind, _READERS[kind](obj)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_atomic(path, text: str):
    """Write through a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(path, obj):
    """Serialise a group, brace or tuple (or an already built dict)."""
    if isinstance(obj, FiniteGroup):
        obj = group_to_dict(obj)
    elif isinstance(obj, SkewBrace):
        obj = brace_to_dict(obj)
    elif isinstance(obj, TrifactorisedGroup):
        obj = trifact_to_dict(obj)
    write_atomic(path, dumps(obj))
