"""JSON and CSV wire formats.

Matrices travel as {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
Every reader raises ``ParseError`` for unreadable files and for documents
that do not validate; writers never fail on well-formed results.
"""

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ValidationError, model_validator

from .config import DEFAULT_CONFIG, NumericConfig
from .errors import InvalidAlgebra, LebesgueCoreError, ParseError
from .functionals import GnsData, PositiveFunctional
from .lebesgue import Decomposition, VerificationReport
from .staralg import AlgebraElement, BlockAlgebra, GeneratorPresentation, WedderburnResult


class MatrixModel(BaseModel):
    dim: int
    re: List[List[float]]
    im: Optional[List[List[float]]] = None

    @model_validator(mode="after")
    def _square(self) -> "MatrixModel":
        shapes = [np.shape(self.re)] + ([np.shape(self.im)] if self.im is not None else [])
        for shape in shapes:
            if shape != (self.dim, self.dim):
                raise ValueError(f"matrix of declared dim {self.dim} has entries of shape {shape}")
        return self

    def to_array(self) -> np.ndarray:
        arr = np.array(self.re, dtype=complex).reshape(self.dim, self.dim)
        if self.im is not None:
            arr = arr + 1j * np.array(self.im, dtype=float).reshape(self.dim, self.dim)
        return arr


class AlgebraModel(BaseModel):
    blocks: List[int]

    def to_algebra(self) -> BlockAlgebra:
        return BlockAlgebra(tuple(self.blocks))


class ElementModel(BaseModel):
    algebra: AlgebraModel
    blocks: List[MatrixModel]

    def to_element(self) -> AlgebraElement:
        return AlgebraElement(self.algebra.to_algebra(), tuple(m.to_array() for m in self.blocks))


class FunctionalModel(BaseModel):
    algebra: AlgebraModel
    density: Union[ElementModel, List[MatrixModel]]

    def density_blocks(self) -> List[np.ndarray]:
        if isinstance(self.density, ElementModel):
            if self.density.algebra.blocks != self.algebra.blocks:
                raise ValueError("density lives on a different algebra than declared")
            return [m.to_array() for m in self.density.blocks]
        return [m.to_array() for m in self.density]


class CayleyModel(BaseModel):
    order: int
    table: List[List[int]]

    @model_validator(mode="after")
    def _shape(self) -> "CayleyModel":
        if len(self.table) != self.order or any(len(row) != self.order for row in self.table):
            raise ValueError(f"Cayley table is not {self.order} x {self.order}")
        return self


class GeneratorsModel(BaseModel):
    dim: int
    generators: List[MatrixModel]


def matrix_payload(arr: np.ndarray) -> Dict[str, Any]:
    arr = np.asarray(arr)
    return {
        "dim": int(arr.shape[0]),
        "re": np.real(arr).astype(float).tolist(),
        "im": np.imag(arr).astype(float).tolist(),
    }


def algebra_payload(algebra: BlockAlgebra) -> Dict[str, Any]:
    return {"blocks": list(algebra.block_dims)}


def element_payload(x: AlgebraElement) -> Dict[str, Any]:
    return {"algebra": algebra_payload(x.algebra), "blocks": [matrix_payload(b) for b in x.blocks]}


def functional_payload(f: PositiveFunctional) -> Dict[str, Any]:
    return {"algebra": algebra_payload(f.algebra), "density": element_payload(f.density)}


def number_payload(value: float) -> Union[float, str]:
    """inf travels as the string "inf"; JSON has no infinity"""
    return "inf" if math.isinf(value) else float(value)


def decomposition_payload(d: Decomposition) -> Dict[str, Any]:
    return {
        "regular": functional_payload(d.regular),
        "singular": functional_payload(d.singular),
        "alpha_min": number_payload(d.alpha_min),
        "unique": d.unique,
    }


def report_payload(report: VerificationReport) -> Dict[str, Any]:
    return {"passed": report.passed, "checks": [c.model_dump() for c in report.checks]}


def wedderburn_payload(result: WedderburnResult) -> Dict[str, Any]:
    return {
        "block_dims": list(result.block_dims),
        "multiplicities": list(result.multiplicities),
        "residual": float(result.residual),
        "null_dim": result.null_dim,
        "unitary": matrix_payload(result.unitary),
    }


def generators_payload(presentation: GeneratorPresentation) -> Dict[str, Any]:
    return {
        "dim": presentation.ambient_dim,
        "generators": [matrix_payload(g) for g in presentation.generators],
    }


def gns_payload(data: GnsData) -> Dict[str, Any]:
    xi = np.asarray(data.cyclic_vector)
    return {
        "quotient_dim": data.quotient_dim,
        "cyclic_vector": {"re": np.real(xi).tolist(), "im": np.imag(xi).tolist()},
        "representation": [matrix_payload(p) for p in data.representation],
        "kernel_dim": len(data.kernel_basis),
        "defects": dict(data.defects),
    }


def config_payload(config: NumericConfig) -> Dict[str, Any]:
    return config.model_dump()


def round_floats(value: Any, digits: Optional[int]) -> Any:
    if digits is None:
        return value
    if isinstance(value, float):
        # adding 0.0 folds -0.0 into 0.0
        return round(value, digits) + 0.0 if math.isfinite(value) else value
    if isinstance(value, dict):
        return {k: round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, list):
        return [round_floats(v, digits) for v in value]
    return value


def dumps(payload: Any, digits: Optional[int] = None) -> str:
    return json.dumps(round_floats(payload, digits), indent=2)


def pretty(payload: Dict[str, Any], digits: Optional[int] = None) -> str:
    """One "key: value" line per top-level entry; nested values stay JSON"""
    lines = []
    for key, value in round_floats(payload, digits).items():
        text = value if isinstance(value, str) else json.dumps(value)
        lines.append(f"{key}: {text}")
    return "\n".join(lines)


def csv_text(rows: Iterable[Dict[str, Any]], columns: Sequence[str], digits: Optional[int] = None) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(round_floats(dict(row), digits))
    return buffer.getvalue()


def load_json(source: Union[str, Path]) -> Any:
    """Parse a JSON file; "-" reads standard input"""
    try:
        text = sys.stdin.read() if str(source) == "-" else Path(source).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {source}: {e}") from e


def _validated(model, document: Any, what: str):
    try:
        return model.model_validate(document)
    except ValidationError as e:
        raise ParseError(f"not a valid {what} document: {e}") from e


def parse_matrix(document: Any) -> np.ndarray:
    return _validated(MatrixModel, document, "matrix").to_array()


def parse_element(document: Any) -> AlgebraElement:
    try:
        return _validated(ElementModel, document, "element").to_element()
    except InvalidAlgebra as e:
        raise ParseError(str(e)) from e


def parse_functional(document: Any, config: NumericConfig = DEFAULT_CONFIG) -> PositiveFunctional:
    """Functional document; PSD certification errors keep their own type"""
    model = _validated(FunctionalModel, document, "functional")
    try:
        blocks = model.density_blocks()
        return PositiveFunctional.from_blocks(model.algebra.to_algebra(), blocks, config)
    except InvalidAlgebra as e:
        raise ParseError(str(e)) from e
    except LebesgueCoreError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from e


def parse_cayley(document: Any) -> List[List[int]]:
    return _validated(CayleyModel, document, "Cayley table").table


def parse_generators(document: Any) -> GeneratorPresentation:
    model = _validated(GeneratorsModel, document, "generator")
    try:
        presentation = GeneratorPresentation.from_generators([m.to_array() for m in model.generators])
    except InvalidAlgebra as e:
        raise ParseError(str(e)) from e
    if presentation.ambient_dim != model.dim:
        raise ParseError(f"generators act on C^{presentation.ambient_dim}, declared dim {model.dim}")
    return presentation


def parse_alpha(value: Union[float, str]) -> float:
    return math.inf if value == "inf" else float(value)


def parse_decomposition(document: Any, config: NumericConfig = DEFAULT_CONFIG) -> Decomposition:
    try:
        alpha = parse_alpha(document["alpha_min"])
        return Decomposition(
            regular=parse_functional(document["regular"], config),
            singular=parse_functional(document["singular"], config),
            alpha_min=alpha,
            unique=bool(document.get("unique", math.isfinite(alpha))),
        )
    except LebesgueCoreError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"not a valid decomposition document: {e}") from e


def emit(text: str, out: Optional[Union[str, Path]] = None) -> None:
    """Write command output to ``out`` or standard output"""
    if out is None or str(out) == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
