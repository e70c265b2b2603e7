from typing import Any, Dict, List

import numpy as np

from .. import codec
from ..errors import AlgebraMismatch, LebesgueCoreError, ParseError
from ..functionals import (
    abs_continuous,
    domination_constant,
    gns,
    order_leq,
    representability_constant,
    singular,
)
from ..lebesgue import decompose, is_unique, verify_decomposition
from ..opdecomp import DecompositionMode
from ..staralg import gamma_norm, seminorm_sigma_F
from .base import Node, register_node

CHECK_COLUMNS = ["name", "passed", "detail"]


def read_pair(node_inputs: Dict[str, Any], numeric):
    f = codec.parse_functional(codec.load_json(node_inputs["f_file"]), numeric)
    g = codec.parse_functional(codec.load_json(node_inputs["g_file"]), numeric)
    if f.algebra != g.algebra:
        raise AlgebraMismatch(f"f lives on {f.algebra.block_dims}, g on {g.algebra.block_dims}")
    return f, g


def parse_indices(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ParseError(f"block indices must be comma separated integers, got {text!r}") from e


PAIR_INPUTS = {
    "f_file": {
        "label": "Functional f",
        "description": "Functional JSON file of f",
        "type": "FILE",
        "required": True,
    },
    "g_file": {
        "label": "Functional g",
        "description": "Functional JSON file of the reference functional g",
        "type": "FILE",
        "required": True,
    },
}


@register_node
class DecomposeNode(Node):
    """Lebesgue decomposition of f with respect to g, with its verification report"""

    NAME = "Lebesgue Decompose"
    COMMAND = "decompose"
    DESCRIPTION = "Splits f into the part absolutely continuous to g and the part singular to g"
    CATEGORY = "Functionals"

    INPUTS = {
        **PAIR_INPUTS,
        "mode": {
            "label": "Mode",
            "description": "schur (closed form) or iterative (limit of parallel sums)",
            "type": "STRING",
            "choices": [m.value for m in DecompositionMode],
            "default": DecompositionMode.SCHUR.value,
            "required": False,
        },
    }

    async def execute(self, node_inputs: Dict[str, Any], workflow_logger) -> Dict[str, Any]:
        try:
            cfg = self.cli_config(node_inputs)
            mode = DecompositionMode(node_inputs.get("mode") or DecompositionMode.SCHUR.value)
            f, g = read_pair(node_inputs, cfg.numeric)
            workflow_logger.info(f"decomposing over blocks {f.algebra.block_dims} in {mode.value} mode")

            d = decompose(f, g, mode, cfg.numeric)
            if d.iterations_used:
                workflow_logger.info(f"iterative mode stopped at n = 2^{d.iterations_used}")
            report = verify_decomposition(f, g, d, cfg.numeric, seed=cfg.seed)
            payload = {
                "mode": mode.value,
                "decomposition": codec.decomposition_payload(d),
                "verification": codec.report_payload(report),
                "config": codec.config_payload(cfg.numeric),
            }
            rows = [c.model_dump() for c in report.checks]
            output = self.render(payload, cfg, rows, CHECK_COLUMNS)
            if not report.passed:
                workflow_logger.error(f"verification failed: {report.failures}")
                return {"exit_code": 2, "output": output, "error_message": f"failed checks {report.failures}"}
            return self.success(output)

        except LebesgueCoreError as e:
            return self.failure(e, workflow_logger)
        except np.linalg.LinAlgError as e:
            return self.linalg_failure(e, workflow_logger)
        except Exception as e:
            workflow_logger.error(f"Error decomposing: {str(e)}")
            workflow_logger.error(f"Input data was: {node_inputs}")
            raise


@register_node
class CheckNode(Node):
    """Order relations between f and g; optionally verifies a stored decomposition"""

    NAME = "Relation Check"
    COMMAND = "check"
    DESCRIPTION = "Reports f <= g, absolute continuity, singularity and uniqueness of the decomposition"
    CATEGORY = "Functionals"

    INPUTS = {
        **PAIR_INPUTS,
        "decomposition_file": {
            "label": "Decomposition",
            "description": "Decomposition JSON (as written by decompose) to verify against f and g",
            "type": "FILE",
            "required": False,
        },
    }

    async def execute(self, node_inputs: Dict[str, Any], workflow_logger) -> Dict[str, Any]:
        try:
            cfg = self.cli_config(node_inputs)
            f, g = read_pair(node_inputs, cfg.numeric)
            unique, alpha = is_unique(f, g, cfg.numeric, seed=cfg.seed)
            payload: Dict[str, Any] = {
                "f_leq_g": order_leq(f, g, cfg.numeric),
                "g_leq_f": order_leq(g, f, cfg.numeric),
                "abs_continuous": abs_continuous(f, g, cfg.numeric),
                "singular": singular(f, g, cfg.numeric),
                "domination_constant": codec.number_payload(domination_constant(f, g, cfg.numeric)),
                "alpha_min": codec.number_payload(alpha),
                "unique": unique,
                "config": codec.config_payload(cfg.numeric),
            }
            exit_code = 0
            rows = None
            stored = node_inputs.get("decomposition_file")
            if stored:
                document = codec.load_json(stored)
                document = document.get("decomposition", document) if isinstance(document, dict) else document
                d = codec.parse_decomposition(document, cfg.numeric)
                report = verify_decomposition(f, g, d, cfg.numeric, seed=cfg.seed)
                payload["verification"] = codec.report_payload(report)
                rows = [c.model_dump() for c in report.checks]
                if not report.passed:
                    workflow_logger.error(f"stored decomposition fails {report.failures}")
                    exit_code = 2
            output = self.render(payload, cfg, rows, CHECK_COLUMNS if rows is not None else None)
            return {"exit_code": exit_code, "output": output, "error_message": ""}

        except LebesgueCoreError as e:
            return self.failure(e, workflow_logger)
        except np.linalg.LinAlgError as e:
            return self.linalg_failure(e, workflow_logger)
        except Exception as e:
            workflow_logger.error(f"Error checking relations: {str(e)}")
            workflow_logger.error(f"Input data was: {node_inputs}")
            raise


@register_node
class GnsNode(Node):
    NAME = "GNS Construction"
    COMMAND = "gns"
    DESCRIPTION = "Cyclic representation and cyclic vector realising a positive functional"
    CATEGORY = "Functionals"

    INPUTS = {
        "f_file": {
            "label": "Functional",
            "description": "Functional JSON file",
            "type": "FILE",
            "required": True,
        },
    }

    async def execute(self, node_inputs: Dict[str, Any], workflow_logger) -> Dict[str, Any]:
        try:
            cfg = self.cli_config(node_inputs)
            f = codec.parse_functional(codec.load_json(node_inputs["f_file"]), cfg.numeric)
            data = gns(f, cfg.numeric)
            workflow_logger.info(f"GNS space of dimension {data.quotient_dim}, defects {data.defects}")
            payload = codec.gns_payload(data)
            payload["config"] = codec.config_payload(cfg.numeric)
            return self.success(self.render(payload, cfg))

        except LebesgueCoreError as e:
            return self.failure(e, workflow_logger)
        except np.linalg.LinAlgError as e:
            return self.linalg_failure(e, workflow_logger)
        except Exception as e:
            workflow_logger.error(f"Error building GNS data: {str(e)}")
            workflow_logger.error(f"Input data was: {node_inputs}")
            raise


@register_node
class SigmaNormNode(Node):
    NAME = "Sigma Seminorm"
    COMMAND = "sigma-norm"
    DESCRIPTION = "sigma_F and the greatest C*-seminorm of an element; representability constant of a functional"
    CATEGORY = "Algebra"

    INPUTS = {
        "element_file": {
            "label": "Element",
            "description": "Element JSON file",
            "type": "FILE",
            "required": True,
        },
        "blocks": {
            "label": "Blocks",
            "description": "Comma separated 0-based block indices F",
            "type": "STRING",
            "default": "",
            "required": False,
        },
        "f_file": {
            "label": "Functional",
            "description": "Functional JSON file whose constant K with |f| <= K sigma_F is reported",
            "type": "FILE",
            "required": False,
        },
    }

    async def execute(self, node_inputs: Dict[str, Any], workflow_logger) -> Dict[str, Any]:
        try:
            cfg = self.cli_config(node_inputs)
            x = codec.parse_element(codec.load_json(node_inputs["element_file"]))
            F = parse_indices(node_inputs.get("blocks") or "")
            payload: Dict[str, Any] = {
                "blocks": F,
                "sigma_F": seminorm_sigma_F(x, F),
                "gamma": gamma_norm(x),
            }
            if node_inputs.get("f_file"):
                f = codec.parse_functional(codec.load_json(node_inputs["f_file"]), cfg.numeric)
                if f.algebra != x.algebra:
                    raise AlgebraMismatch(f"functional on {f.algebra.block_dims}, element on {x.algebra.block_dims}")
                payload["representability_constant"] = codec.number_payload(representability_constant(f, F))
            return self.success(self.render(payload, cfg))

        except LebesgueCoreError as e:
            return self.failure(e, workflow_logger)
        except Exception as e:
            workflow_logger.error(f"Error computing seminorms: {str(e)}")
            workflow_logger.error(f"Input data was: {node_inputs}")
            raise
