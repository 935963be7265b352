"""Multiplication in the mod-2 motivic Steenrod algebra, conjugated Milnor basis."""

from .coefficients import Coeff, EvalProfile, coeff_eval
from .dual import (
    DualElement,
    TensorElement,
    c_coeff,
    coproduct_gen,
    coproduct_mono_bruteforce,
    dual_mul,
    simplify_tau,
    tree_expand,
)
from .expr import eval_text, parse, render
from .matrices import coproduct_mono_closed, enumerate_product_matrices
from .product import (
    OpElement,
    element_mul,
    p_of,
    product_oracle,
    q_i,
    qp,
    qp_mul_basis,
    qp_mul_full,
    qp_mul_tau,
    unit,
)

__version__ = "0.1.0"

__all__ = [
    "Coeff", "EvalProfile", "coeff_eval",
    "DualElement", "TensorElement", "c_coeff", "coproduct_gen", "coproduct_mono_bruteforce",
    "dual_mul", "simplify_tau", "tree_expand",
    "eval_text", "parse", "render",
    "coproduct_mono_closed", "enumerate_product_matrices",
    "OpElement", "element_mul", "p_of", "product_oracle", "q_i", "qp", "qp_mul_basis",
    "qp_mul_full", "qp_mul_tau", "unit",
]
