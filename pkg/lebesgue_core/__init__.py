from .config import DEFAULT_CONFIG, CliConfig, NumericConfig
from .errors import *
from .log import configure_logging, logger
from .numkernel import *
from .opdecomp import *
from .staralg import *
from .functionals import *
from .lebesgue import *
from .nonuniq import *
from .nodes import COMMON_INPUTS, Node, NodeRegistry, register_node


VERSION = "0.1.0"
NAME = "Lebesgue Core"
DESCRIPTION = """Lebesgue decomposition of positive functionals on finite-dimensional *-algebras:

• Operator Layer
  - Certified PSD kernels: pseudo-inverse, support projections, generalized eigenvalues
  - Parallel sums, shorted operators, Schur and iterative decompositions

• Algebra Layer
  - Block algebras M_n1 + ... + M_nk, sigma_F seminorms, the greatest C*-seminorm
  - Wedderburn block diagonalisation, finite group algebras

• Functional Layer
  - Order, absolute continuity, singularity, GNS construction, corners
  - Decomposition f = f_r + f_s with verification reports and uniqueness tests

• Non-uniqueness Lab
  - Truncated witness construction with its quantitative bounds

Every command is a registered node and is reachable through `python -m lebesgue_core`."""

TAGS = ["lebesgue-decomposition", "positive-functionals", "c-star-algebra", "operator-theory", "numerics"]
