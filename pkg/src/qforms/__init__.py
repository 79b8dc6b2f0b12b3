"""qforms: exact symbolic engine for q-commutation algebras, differential
graded calculi, hom-connections and complexes of integral forms, with
built-in presentations of the quantum Euclidean group and the quantum plane
and a verification suite replaying their structural identities."""

from .algebra import AlgebraElement, GeneratorSpec, Presentation
from .checks import CheckResult, SuiteConfig, run_suite
from .duality import Duality, exactness_witness, surjectivity_witness
from .forms import BasisFormSpec, Calculus, Form
from .grammar import ParseError, format_value, parse_expr
from .integrals import IntegralForm, bimodule_action, curvature, dual_basis, \
    nabla, nabla_ext
from .presets import Embedding, PresetBundle, build_cq, build_eq2, build_preset, \
    check_restriction
from .scalars import PoleError, RatFunc, RationalScalars, SYMBOLIC, \
    SymbolicScalars, format_scalar, q_power, qint, specialize

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "BasisFormSpec", "Calculus", "CheckResult", "Duality",
    "Embedding", "Form", "GeneratorSpec", "IntegralForm", "ParseError",
    "PoleError", "PresetBundle", "Presentation", "RatFunc", "RationalScalars",
    "SYMBOLIC", "SuiteConfig", "SymbolicScalars", "bimodule_action",
    "build_cq", "build_eq2", "build_preset", "check_restriction", "curvature",
    "dual_basis", "exactness_witness", "format_scalar", "format_value",
    "nabla", "nabla_ext", "parse_expr", "q_power", "qint", "run_suite",
    "specialize", "surjectivity_witness",
]
