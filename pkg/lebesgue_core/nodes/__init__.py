from .base import COMMON_INPUTS, Node, NodeRegistry, register_node
from .algebra import GroupAlgebraNode, WedderburnNode
from .functional import CheckNode, DecomposeNode, GnsNode, SigmaNormNode
from .nonuniq import NonuniqReportNode
