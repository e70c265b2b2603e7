from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Type

from ..codec import csv_text, dumps, pretty
from ..config import CliConfig, DEFAULT_CONFIG
from ..errors import LebesgueCoreError, NoConvergence


class NodeRegistry:
    """Command nodes by their command name"""

    _nodes: Dict[str, Type["Node"]] = {}

    @classmethod
    def register(cls, node_cls: Type["Node"]) -> Type["Node"]:
        if not node_cls.COMMAND:
            raise ValueError(f"{node_cls.__name__} has no COMMAND")
        if node_cls.COMMAND in cls._nodes and cls._nodes[node_cls.COMMAND] is not node_cls:
            raise ValueError(f"command {node_cls.COMMAND!r} registered twice")
        cls._nodes[node_cls.COMMAND] = node_cls
        return node_cls

    @classmethod
    def get(cls, command: str) -> Type["Node"]:
        return cls._nodes[command]

    @classmethod
    def commands(cls) -> List[str]:
        return sorted(cls._nodes)


def register_node(cls):
    return NodeRegistry.register(cls)


COMMON_INPUTS: Dict[str, Dict[str, Any]] = {
    "tol_rank": {
        "label": "Rank Tolerance",
        "description": "Relative rank cutoff (default 64 * dim * machine epsilon)",
        "type": "FLOAT",
        "required": False,
    },
    "tol_singular": {
        "label": "Singularity Tolerance",
        "description": "Relative parallel-sum norm treated as zero",
        "type": "FLOAT",
        "required": False,
    },
    "seed": {
        "label": "Seed",
        "description": "Seed for every random choice the command makes",
        "type": "INT",
        "default": 0,
        "required": False,
    },
    "format": {
        "label": "Output Format",
        "description": "json, csv or pretty",
        "type": "STRING",
        "choices": ["json", "csv", "pretty"],
        "required": False,
    },
    "out": {
        "label": "Output File",
        "description": "Write the result here instead of standard output",
        "type": "STRING",
        "required": False,
    },
    "digits": {
        "label": "Digits",
        "description": "Round printed floats to this many decimals",
        "type": "INT",
        "required": False,
    },
}


class Node(ABC):
    """Base class of the command nodes.

    ``execute`` returns a dict with ``exit_code``, ``output`` (the rendered
    result, empty on failure) and ``error_message``.
    """

    NAME: str = ""
    COMMAND: str = ""
    DESCRIPTION: str = ""
    CATEGORY: str = "Uncategorized"
    DEFAULT_FORMAT: str = "json"
    INPUTS: Dict[str, Dict[str, Any]] = {}
    OUTPUTS: Dict[str, Dict[str, Any]] = {
        "exit_code": {
            "label": "Exit Code",
            "description": "0 on success, otherwise the error's exit code",
            "type": "INT",
        },
        "output": {
            "label": "Output",
            "description": "Rendered command result",
            "type": "STRING",
        },
        "error_message": {
            "label": "Error Message",
            "description": "Error message if the command failed",
            "type": "STRING",
        },
    }

    @abstractmethod
    async def execute(self, node_inputs: Dict[str, Any], workflow_logger) -> Dict[str, Any]:
        raise NotImplementedError

    @classmethod
    def all_inputs(cls) -> Dict[str, Dict[str, Any]]:
        return {**cls.INPUTS, **COMMON_INPUTS}

    def cli_config(self, node_inputs: Dict[str, Any]) -> CliConfig:
        numeric = DEFAULT_CONFIG.with_overrides(
            rank_tol=node_inputs.get("tol_rank"),
            singular_tol=node_inputs.get("tol_singular"),
        )
        return CliConfig(
            numeric=numeric,
            seed=node_inputs.get("seed") or 0,
            output_format=node_inputs.get("format") or self.DEFAULT_FORMAT,
            digits=node_inputs.get("digits"),
        )

    def render(
        self,
        payload: Dict[str, Any],
        cfg: CliConfig,
        rows: Optional[List[Dict[str, Any]]] = None,
        columns: Optional[List[str]] = None,
    ) -> str:
        """Render in the configured format; csv needs ``rows`` and ``columns``"""
        if cfg.output_format == "csv":
            if rows is None:
                rows, columns = [payload], [k for k, v in payload.items() if not isinstance(v, (dict, list))]
            return csv_text(rows, columns, cfg.digits)
        if cfg.output_format == "pretty":
            return pretty(payload, cfg.digits)
        return dumps(payload, cfg.digits)

    @staticmethod
    def success(output: str) -> Dict[str, Any]:
        return {"exit_code": 0, "output": output, "error_message": ""}

    @staticmethod
    def failure(error: LebesgueCoreError, workflow_logger, output: str = "") -> Dict[str, Any]:
        workflow_logger.error(f"{type(error).__name__}: {error}")
        return {"exit_code": error.exit_code, "output": output, "error_message": str(error)}

    @classmethod
    def linalg_failure(cls, error: Exception, workflow_logger) -> Dict[str, Any]:
        """A LAPACK routine gave up; reported like any other non-convergence"""
        return cls.failure(NoConvergence(f"linear algebra routine failed: {error}"), workflow_logger)
