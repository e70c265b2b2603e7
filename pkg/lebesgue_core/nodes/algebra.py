from typing import Any, Dict, List

import numpy as np

from .. import codec
from ..errors import LebesgueCoreError, ParseError
from ..staralg import (
    cyclic_group_table,
    group_algebra,
    max_irreducible_dimension,
    symmetric_group_table,
    wedderburn_decompose,
)
from .base import Node, register_node

NAMED_GROUPS = {"cyclic": cyclic_group_table, "symmetric": symmetric_group_table}


def named_group_table(spec: str) -> List[List[int]]:
    """Cayley table of "cyclic:n" or "symmetric:n" """
    name, _, order = spec.partition(":")
    if name not in NAMED_GROUPS or not order.isdigit() or int(order) < 1:
        raise ParseError(f"unknown group {spec!r}; expected cyclic:n or symmetric:n")
    return NAMED_GROUPS[name](int(order))


def certificate_line(d: int) -> str:
    return f"uniqueness certificate: max irreducible dimension = {d}"


@register_node
class WedderburnNode(Node):
    """Block diagonalisation of the *-algebra generated by a set of matrices"""

    NAME = "Wedderburn Decomposition"
    COMMAND = "wedderburn"
    DESCRIPTION = "Finds a unitary bringing the generated *-algebra to irreducible blocks"
    CATEGORY = "Algebra"
    DEFAULT_FORMAT = "pretty"

    INPUTS = {
        "generators_file": {
            "label": "Generators",
            "description": "Generator JSON file; - reads standard input",
            "type": "FILE",
            "required": True,
        },
    }

    async def execute(self, node_inputs: Dict[str, Any], workflow_logger) -> Dict[str, Any]:
        try:
            cfg = self.cli_config(node_inputs)
            presentation = codec.parse_generators(codec.load_json(node_inputs["generators_file"]))
            workflow_logger.info(
                f"{len(presentation.generators)} generators on C^{presentation.ambient_dim}, seed {cfg.seed}"
            )
            result = wedderburn_decompose(presentation, seed=cfg.seed, config=cfg.numeric)
            d = max_irreducible_dimension(result)

            if cfg.output_format == "pretty":
                summary = {
                    "block_dims": list(result.block_dims),
                    "multiplicities": list(result.multiplicities),
                    "residual": result.residual,
                }
                output = codec.pretty(summary, cfg.digits) + "\n" + certificate_line(d)
            else:
                payload = codec.wedderburn_payload(result)
                payload["max_irreducible_dimension"] = d
                payload["certificate"] = certificate_line(d)
                output = self.render(payload, cfg)
            return self.success(output)

        except LebesgueCoreError as e:
            return self.failure(e, workflow_logger)
        except np.linalg.LinAlgError as e:
            return self.linalg_failure(e, workflow_logger)
        except Exception as e:
            workflow_logger.error(f"Error decomposing algebra: {str(e)}")
            workflow_logger.error(f"Input data was: {node_inputs}")
            raise


@register_node
class GroupAlgebraNode(Node):
    """Regular representation of a finite group as generator JSON"""

    NAME = "Group Algebra"
    COMMAND = "group-algebra"
    DESCRIPTION = "Turns a Cayley table into the generators of its group algebra"
    CATEGORY = "Algebra"

    INPUTS = {
        "table_file": {
            "label": "Cayley Table",
            "description": "Cayley table JSON file",
            "type": "FILE",
            "required": False,
        },
        "group": {
            "label": "Named Group",
            "description": "cyclic:n or symmetric:n instead of a table file",
            "type": "STRING",
            "required": False,
        },
    }

    async def execute(self, node_inputs: Dict[str, Any], workflow_logger) -> Dict[str, Any]:
        try:
            cfg = self.cli_config(node_inputs)
            if node_inputs.get("table_file"):
                table = codec.parse_cayley(codec.load_json(node_inputs["table_file"]))
            elif node_inputs.get("group"):
                table = named_group_table(node_inputs["group"])
            else:
                raise ParseError("either a Cayley table file or a named group is required")
            presentation = group_algebra(table)
            workflow_logger.info(f"group of order {len(table)}")
            payload = codec.generators_payload(presentation)
            payload["order"] = len(table)
            return self.success(self.render(payload, cfg))

        except LebesgueCoreError as e:
            return self.failure(e, workflow_logger)
        except Exception as e:
            workflow_logger.error(f"Error building group algebra: {str(e)}")
            workflow_logger.error(f"Input data was: {node_inputs}")
            raise
