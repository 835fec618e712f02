"""
Loaders turning JSON and binary inputs into holonomy2 objects.

Rational entries are JSON integers or "p/q" strings; floats are refused in
exact data. Every malformed input raises SchemaError.
"""

# pylint: disable=R0911

import hashlib
import json
import struct

import numpy as np
import sympy
from loguru import logger

from holonomy2.algebra_core import (
    LieAlgebra,
    LieModule,
    ShortExactSequence,
    cochain_from_values,
)
from holonomy2.crossed import CrossedModule
from holonomy2.errors import Holonomy2Error, SchemaError
from holonomy2.forms import MCPair, PolyForm
from holonomy2.hochschild import FinDGA
from holonomy2.linf import TwoTermLinf, from_lie_algebra, l3_tensor
from holonomy2.loopspace import SampledSurface
from holonomy2.simplicial import FinSimpSet


def read_json(filename):
    """
    Parsed JSON document plus the sha256 digest of its bytes
    """
    try:
        with open(filename, "rb") as handle:
            raw = handle.read()
        return json.loads(raw.decode("utf-8")), hashlib.sha256(raw).hexdigest()
    except FileNotFoundError as err:
        raise SchemaError(f"no such file: {filename}") from err
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        raise SchemaError(f"{filename} is not valid JSON: {err}") from err


def _convert(builder, data, what):
    try:
        return builder(data)
    except SchemaError:
        raise
    except (KeyError, IndexError, TypeError, ValueError, ZeroDivisionError) as err:
        raise SchemaError(f"malformed {what}: {err!r}") from err
    except Holonomy2Error as err:
        raise SchemaError(f"malformed {what}: {err}") from err


def lie_algebra_from_dict(data):
    """
    {"dim", "basis"?, "c": dim^3 nested array} or, sparsely,
    {"dim", "basis"?, "brackets": [[i, j, k, c], ...]} for i < j
    """

    def build(data):
        dim = int(data["dim"])
        names = tuple(data.get("basis", ()))
        if "c" in data:
            return LieAlgebra(dim, names, data["c"])
        brackets = {}
        for i, j, k, coef in data.get("brackets", []):
            if not i < j:
                raise SchemaError("sparse brackets need i < j")
            brackets.setdefault((int(i), int(j)), {})[int(k)] = coef
        algebra = LieAlgebra.from_brackets(names or tuple(f"e{i}" for i in range(dim)), brackets)
        if algebra.dim != dim:
            raise SchemaError("names do not match dim")
        return algebra

    return _convert(build, data, "Lie algebra")


def module_from_dict(algebra, data):
    """
    {"dim", "action": [matrix per basis vector]}
    """
    return _convert(
        lambda d: LieModule(algebra, int(d["dim"]), tuple(d["action"])), data, "module"
    )


def crossed_from_dict(data):
    """
    {"h": algebra, "g": algebra, "mu": matrix, "action": [matrices]}
    """

    def build(data):
        h = lie_algebra_from_dict(data["h"])
        g = lie_algebra_from_dict(data["g"])
        return CrossedModule(h, g, _matrix_rows(data["mu"], g.dim, h.dim), tuple(
            _matrix_rows(m, h.dim, h.dim) for m in data["action"]
        ))

    return _convert(build, data, "crossed module")


def _matrix_rows(rows, nrows, ncols):
    if nrows == 0 or ncols == 0:
        return sympy.zeros(nrows, ncols)
    return rows


def cochain_from_list(dim, module_dim, degree, entries):
    """
    [{"indices": [...], "value": [...]}, ...] as a cochain vector
    """
    values = {tuple(int(i) for i in entry["indices"]): entry["value"] for entry in entries}
    return cochain_from_values(dim, module_dim, degree, values)


def ses_from_dict(data):
    """
    {"algebra", "sub", "middle", "quotient", "incl", "proj", "alpha"}
    """

    def build(data):
        algebra = lie_algebra_from_dict(data["algebra"])
        sub = module_from_dict(algebra, data["sub"])
        middle = module_from_dict(algebra, data["middle"])
        quotient = module_from_dict(algebra, data["quotient"])
        ses = ShortExactSequence(
            sub,
            middle,
            quotient,
            _matrix_rows(data["incl"], middle.dim, sub.dim),
            _matrix_rows(data["proj"], quotient.dim, middle.dim),
        )
        alpha = cochain_from_list(algebra.dim, quotient.dim, 2, data.get("alpha", []))
        return ses, alpha

    return _convert(build, data, "short exact sequence")


def linf_from_dict(data):
    """
    {"l0": algebra, "lm1_dim", "l1", "action", "l3": [[i, j, k, [values]], ...]}
    with l3 given on increasing triples
    """

    def build(data):
        l0 = lie_algebra_from_dict(data["l0"])
        n1 = int(data["lm1_dim"])
        entries = [
            {"indices": entry[:3], "value": entry[3]} for entry in data.get("l3", [])
        ]
        cochain = cochain_from_list(l0.dim, n1, 3, entries)
        return TwoTermLinf(
            l0,
            n1,
            _matrix_rows(data.get("l1", []), l0.dim, n1),
            tuple(_matrix_rows(m, n1, n1) for m in data["action"]),
            l3_tensor(l0.dim, n1, cochain),
        )

    return _convert(build, data, "two-term L-infinity algebra")


def mc_pair_from_dict(data):
    """
    {"chart_dim", "target": {"linf": ...} or {"lie": ...}, "A": rows, "B": rows}
    with rows [exponents, indices, value index, coefficient]
    """

    def build(data):
        chart_dim = int(data["chart_dim"])
        target = data["target"]
        if "linf" in target:
            linf = linf_from_dict(target["linf"])
        else:
            linf = from_lie_algebra(lie_algebra_from_dict(target["lie"]))
        a_form = PolyForm.from_json_terms(chart_dim, 1, 0, linf.l0.dim, data.get("A", []))
        b_form = PolyForm.from_json_terms(chart_dim, 2, -1, linf.lm1_dim, data.get("B", []))
        return MCPair(a_form, b_form, linf)

    return _convert(build, data, "Maurer-Cartan pair")


def dga_from_dict(data):
    """
    {"basis", "degrees", "table": [[i, j, k, c]], "d": [[i, j, c]], "unit", "commutative"}
    """

    def build(data):
        products = {}
        for i, j, k, coef in data.get("table", []):
            products.setdefault((int(i), int(j)), {})[int(k)] = coef
        differential = {}
        for i, j, coef in data.get("d", []):
            differential.setdefault(int(i), {})[int(j)] = coef
        return FinDGA(
            tuple(data["basis"]),
            tuple(data["degrees"]),
            products,
            differential,
            int(data.get("unit", 0)),
            bool(data.get("commutative", False)),
        )

    return _convert(build, data, "DGA")


def simpset_from_dict(data):
    """
    {"sizes", "faces", "degeneracies", "name"?}
    """

    def build(data):
        def tables(levels):
            return tuple(
                tuple(tuple(int(x) for x in table) for table in level) for level in levels
            )

        return FinSimpSet(
            tuple(int(x) for x in data["sizes"]),
            tables(data["faces"]),
            tables(data["degeneracies"]),
            data.get("name", ""),
        )

    return _convert(build, data, "simplicial set")


def surface_from_dict(data):
    """
    {"grid": p x m x n nested lists, "winding_sigma"?, "winding_tau"?}
    """
    return _convert(
        lambda d: SampledSurface(
            np.asarray(d["grid"], dtype=float), d.get("winding_sigma"), d.get("winding_tau")
        ),
        data,
        "surface",
    )


def load_surface_binary(filename, winding_sigma=None, winding_tau=None):
    """
    int64 ndim, int64 dims, then row-major float64 data
    """
    try:
        with open(filename, "rb") as handle:
            raw = handle.read()
    except FileNotFoundError as err:
        raise SchemaError(f"no such file: {filename}") from err
    try:
        (ndim,) = struct.unpack_from("<q", raw, 0)
        if ndim != 3:
            raise SchemaError("surface files hold 3-dimensional arrays")
        dims = struct.unpack_from(f"<{ndim}q", raw, 8)
        if any(size <= 0 for size in dims):
            raise SchemaError(f"surface dimensions must be positive, got {dims}")
        offset = 8 * (1 + ndim)
        count = int(np.prod(dims))
        if len(raw) != offset + 8 * count:
            raise SchemaError("surface file length does not match its header")
        data = np.frombuffer(raw, dtype="<f8", count=count, offset=offset).reshape(dims)
    except struct.error as err:
        raise SchemaError(f"truncated surface header: {err}") from err
    logger.debug("loaded surface of shape {}", dims)
    return _convert(
        lambda d: SampledSurface(d, winding_sigma, winding_tau), data, "surface"
    ), hashlib.sha256(raw).hexdigest()


def save_surface_binary(filename, surface):
    """
    Inverse of load_surface_binary
    """
    grid = np.ascontiguousarray(surface.grid, dtype="<f8")
    with open(filename, "wb") as handle:
        handle.write(struct.pack("<q", grid.ndim))
        handle.write(struct.pack(f"<{grid.ndim}q", *grid.shape))
        handle.write(grid.tobytes())


def load_crossed(filename):
    """
    Crossed module from a JSON file, with the file digest
    """
    data, digest = read_json(filename)
    return crossed_from_dict(data), digest


def load_ses(filename):
    """
    Sequence and alpha from a JSON file, with the file digest
    """
    data, digest = read_json(filename)
    return ses_from_dict(data), digest


def load_mc_pair(filename):
    """
    Maurer-Cartan pair from a JSON file, with the file digest
    """
    data, digest = read_json(filename)
    return mc_pair_from_dict(data), digest


def load_dga(filename):
    """
    DGA from a JSON file, with the file digest
    """
    data, digest = read_json(filename)
    return dga_from_dict(data), digest


def load_simpset(filename):
    """
    Simplicial set from a JSON file, with the file digest
    """
    data, digest = read_json(filename)
    return simpset_from_dict(data), digest
