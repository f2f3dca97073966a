"""Polarization constants, polynomial norms, and Markov/Bernstein bounds on ell_p spaces."""

__version__ = "0.1.0"

from .forms import (
    COMPLEX,
    REAL,
    FormError,
    MultiIndex,
    Pattern,
    SpaceSpec,
    SymmetricForm,
    complexify_eval,
    complexify_form,
    eval_mixed,
    eval_poly,
    eval_tensor_direct,
    frechet,
    load_form,
    make_form,
    multinomial_terms,
    polarize,
    random_form,
    save_form,
    zero_form,
)

__all__ = [
    "COMPLEX",
    "REAL",
    "FormError",
    "MultiIndex",
    "Pattern",
    "SpaceSpec",
    "SymmetricForm",
    "complexify_eval",
    "complexify_form",
    "eval_mixed",
    "eval_poly",
    "eval_tensor_direct",
    "frechet",
    "load_form",
    "make_form",
    "multinomial_terms",
    "polarize",
    "random_form",
    "save_form",
    "zero_form",
    "__version__",
]
