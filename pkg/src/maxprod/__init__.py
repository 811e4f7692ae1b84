"""Max-product Baskakov operator with certified numerics and bound verification."""

from .errors import (
    CertificateError,
    DomainError,
    HypothesisError,
    MaxProdError,
    NonCertifiedError,
    PreconditionError,
    UnknownFunctionError,
)
from .functions import FuncSpec, get_function, max_scale_combine, phi_at
from .kernel import (
    LogWeight,
    interval_index,
    log_basis_weight,
    m_term,
    weight_decay_start,
    weight_ratio_m,
)
from .operators import EvalResult, eval_classical, eval_max_product, eval_phi_error

__version__ = "0.1.0"
