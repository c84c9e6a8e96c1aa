"""Textual function descriptors.

Grammar (whitespace-insensitive, parameters by keyword)::

    abs_pow(p=4[, coeff=1])
    two_norm_pow(p=4, dim=3[, coeff=1])
    p_norm_pow(p=4, dim=2[, coeff=1])
    pw_quad(a=1e-7, b=1)
    quad(dim=3[, scale=1])           # scale/2 * ||x||^2
    sum(w1*term1, term2, ...)        # weights default to 1

Numeric parameters may be simple arithmetic such as ``4/3``.
"""
from __future__ import annotations

import ast
import operator

import numpy as np

from .catalog import (
    PiecewiseQuadratic1D,
    PNormPower,
    PowerAbs,
    QuadraticForm,
    ReferenceFunction,
    ScaledSum,
    TwoNormPower,
)


class DescriptorError(ValueError):
    pass


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}

# name -> (required params, optional params with defaults)
_FAMILIES = {
    "abs_pow": (("p",), {"coeff": 1.0}),
    "two_norm_pow": (("p", "dim"), {"coeff": 1.0}),
    "p_norm_pow": (("p", "dim"), {"coeff": 1.0}),
    "pw_quad": (("a", "b"), {}),
    "quad": (("dim",), {"scale": 1.0}),
}


def _number(node) -> float:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        return float(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _number(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        try:
            return float(_BINOPS[type(node.op)](_number(node.left), _number(node.right)))
        except (ZeroDivisionError, OverflowError) as exc:
            raise DescriptorError(f"bad arithmetic: {exc}") from None
    raise DescriptorError(f"expected a number, got {ast.dump(node)}")


def _integer(name, v):
    if v != int(v):
        raise DescriptorError(f"{name} must be an integer, got {v}")
    return int(v)


def _family(call: ast.Call) -> ReferenceFunction:
    name = call.func.id
    required, optional = _FAMILIES[name]
    if call.args:
        raise DescriptorError(f"{name}: parameters must be given by keyword")
    kw = {}
    for k in call.keywords:
        if k.arg is None or k.arg in kw:
            raise DescriptorError(f"{name}: bad or repeated keyword")
        if k.arg not in required and k.arg not in optional:
            raise DescriptorError(f"{name}: unknown parameter {k.arg!r}")
        kw[k.arg] = _number(k.value)
    missing = [r for r in required if r not in kw]
    if missing:
        raise DescriptorError(f"{name}: missing parameter(s) {', '.join(missing)}")
    params = {**optional, **kw}
    if name == "abs_pow":
        return PowerAbs(params["p"], params["coeff"])
    if name == "two_norm_pow":
        return TwoNormPower(params["p"], _integer("dim", params["dim"]), params["coeff"])
    if name == "p_norm_pow":
        return PNormPower(params["p"], _integer("dim", params["dim"]), params["coeff"])
    if name == "pw_quad":
        return PiecewiseQuadratic1D(params["a"], params["b"])
    dim = _integer("dim", params["dim"])
    if params["scale"] <= 0:
        raise DescriptorError("quad: scale must be positive")
    return QuadraticForm(params["scale"] * np.eye(dim))


def _term(node) -> tuple[float, ReferenceFunction]:
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
        if isinstance(node.right, ast.Call):
            return _number(node.left), _build(node.right)
        if isinstance(node.left, ast.Call):
            return _number(node.right), _build(node.left)
    return 1.0, _build(node)


def _build(node) -> ReferenceFunction:
    if not (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)):
        raise DescriptorError("expected a function descriptor such as abs_pow(p=4)")
    name = node.func.id
    if name == "sum":
        if node.keywords or not node.args:
            raise DescriptorError("sum takes one or more positional weighted terms")
        return ScaledSum(tuple(_term(a) for a in node.args))
    if name not in _FAMILIES:
        raise DescriptorError(f"unknown family {name!r}")
    return _family(node)


def parse_descriptor(text: str) -> ReferenceFunction:
    """Parse a descriptor string into a catalog function.

    Raises DescriptorError for syntax errors and ValueError (from the catalog
    constructors) for invalid parameters.
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise DescriptorError(f"cannot parse descriptor {text!r}: {exc.msg}") from None
    return _build(tree.body)
