from typing import Any, Dict, List

import numpy as np

from .. import codec
from ..errors import LebesgueCoreError, ParseError
from ..nonuniq import DEFAULT_LEVELS, check_level, degeneration_chart, report_levels
from .base import Node, register_node

REPORT_COLUMNS = ["N", "n", "p_an", "g_an", "bound", "lambda_max", "alpha_min"]
CHART_COLUMNS = ["N", "alpha_min", "lambda_max", "singularity_defect", "unique"]


def parse_levels(text: str) -> List[int]:
    try:
        levels = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ParseError(f"levels must be comma separated integers, got {text!r}") from e
    if not levels:
        raise ParseError("at least one level is required")
    return [check_level(level) for level in levels]


@register_node
class NonuniqReportNode(Node):
    """Witness bounds of the truncated non-uniqueness construction"""

    NAME = "Non-uniqueness Report"
    COMMAND = "nonuniq-report"
    DESCRIPTION = "Measures the witness operators and the degeneration of the uniqueness constants"
    CATEGORY = "Reports"
    DEFAULT_FORMAT = "csv"

    INPUTS = {
        "levels": {
            "label": "Levels",
            "description": "Comma separated truncation levels N, each in [2, 40]",
            "type": "STRING",
            "default": ",".join(str(level) for level in DEFAULT_LEVELS),
            "required": False,
        },
        "chart": {
            "label": "Degeneration Chart",
            "description": "Emit alpha_min, lambda_max and the singularity defect per level instead",
            "type": "BOOLEAN",
            "default": False,
            "required": False,
        },
    }

    async def execute(self, node_inputs: Dict[str, Any], workflow_logger) -> Dict[str, Any]:
        try:
            cfg = self.cli_config(node_inputs)
            levels = parse_levels(node_inputs.get("levels") or self.INPUTS["levels"]["default"])
            workflow_logger.info(f"truncation levels {levels}")

            if node_inputs.get("chart"):
                rows = [row.model_dump() for row in degeneration_chart(levels, cfg.numeric, seed=cfg.seed)]
                payload = {"rows": rows, "config": codec.config_payload(cfg.numeric)}
                return self.success(self.render(payload, cfg, rows, CHART_COLUMNS))

            report = report_levels(levels, cfg.numeric)
            rows = [row.model_dump() for row in report.rows]
            payload = {"rows": rows, "violations": report.violations, "config": codec.config_payload(cfg.numeric)}
            output = self.render(payload, cfg, rows, REPORT_COLUMNS)
            if not report.passed:
                workflow_logger.error(f"{len(report.violations)} bound violations")
                return {"exit_code": 2, "output": output, "error_message": "; ".join(report.violations)}
            return self.success(output)

        except LebesgueCoreError as e:
            return self.failure(e, workflow_logger)
        except np.linalg.LinAlgError as e:
            return self.linalg_failure(e, workflow_logger)
        except Exception as e:
            workflow_logger.error(f"Error building report: {str(e)}")
            workflow_logger.error(f"Input data was: {node_inputs}")
            raise
