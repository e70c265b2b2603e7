"""Command line front end; one subcommand per registered node.

Exit codes: 0 success, 1 input or parse error, 2 failed verification or
violated bound, 3 algebra mismatch, 4 no convergence, 5 zero functional.
"""

import argparse
import asyncio
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from .codec import emit
from .log import command_logger, configure_logging, logger
from .nodes import NodeRegistry

ARG_TYPES = {"INT": int, "FLOAT": float, "STRING": str, "FILE": str}


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_input(parser: argparse.ArgumentParser, name: str, spec: Dict[str, Any]) -> None:
    help_text = spec.get("description", "")
    if spec.get("required") and spec["type"] == "FILE":
        parser.add_argument(name, metavar=name.upper(), help=help_text)
        return
    flag = "--" + name.replace("_", "-")
    if spec["type"] == "BOOLEAN":
        parser.add_argument(flag, dest=name, action="store_true", help=help_text)
        return
    kwargs = {"dest": name, "type": ARG_TYPES[spec["type"]], "help": help_text}
    if "choices" in spec:
        kwargs["choices"] = spec["choices"]
    if "default" in spec:
        kwargs["default"] = spec["default"]
    parser.add_argument(flag, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog="lebesgue_core", description="Lebesgue decomposition toolkit")
    parser.add_argument("--log-level", default="WARNING", help="loguru level for messages on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    for command in NodeRegistry.commands():
        node_cls = NodeRegistry.get(command)
        sub = subparsers.add_parser(command, help=node_cls.DESCRIPTION, description=node_cls.DESCRIPTION)
        for name, spec in node_cls.all_inputs().items():
            _add_input(sub, name, spec)
    return parser


def run(command: str, node_inputs: Dict[str, Any]) -> Dict[str, Any]:
    """Execute one node outside the argument parser"""
    node = NodeRegistry.get(command)()
    return asyncio.run(node.execute(node_inputs, command_logger(command)))


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    node_cls = NodeRegistry.get(args.command)
    node_inputs = {name: getattr(args, name, None) for name in node_cls.all_inputs()}
    try:
        result = run(args.command, node_inputs)
    except ValidationError as e:
        logger.bind(command=args.command).error(f"invalid settings: {e}")
        return 1
    if result["output"]:
        emit(result["output"], node_inputs.get("out"))
    return int(result["exit_code"])

