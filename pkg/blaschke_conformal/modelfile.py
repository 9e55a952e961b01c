#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
JSON formats: the Blaschke specification file and the model file.

Complex numbers are always ``{"re": ..., "im": ...}`` objects. Floats are
written by the ``json`` module with ``repr`` precision, so parsing a
serialized model reproduces every number exactly.
"""

import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .algebra import ComplexPolynomial
from .blaschke import EquallySpacedForm, FiniteBlaschkeProduct, MobiusDisk
from .continuation import BranchGrid, PolarGridSpec
from .errors import InvalidInput
from .modeler import (
    ClosedFormEquallySpaced,
    ConformalModel,
    DepressedCubic,
    IdentityOfB,
    ModelCase,
    TrackedBranch,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
LAMBDA_UNIMODULAR = 1e-9


def complex_to_json(z: complex) -> Dict[str, float]:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def complex_from_json(data: Any, what: str = "complex number") -> complex:
    if not isinstance(data, dict) or set(data) != {"re", "im"}:
        raise InvalidInput(f"{what} must be an object with keys 're' and 'im', got {data!r}")
    parts = []
    for key in ("re", "im"):
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InvalidInput(f"{what}: '{key}' must be a finite number, got {value!r}")
        try:
            number = float(value)
        except OverflowError as err:
            raise InvalidInput(f"{what}: '{key}' is too large for a float") from err
        if not math.isfinite(number):
            raise InvalidInput(f"{what}: '{key}' must be a finite number, got {value!r}")
        parts.append(number)
    return complex(parts[0], parts[1])


def load_json(path: PathLike) -> Any:
    """Read a JSON document.

    Raises:
        InvalidInput: If the file is missing, unreadable or not JSON
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise InvalidInput(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise InvalidInput(f"{path} is not valid JSON: {err}") from err


def parse_blaschke_spec(data: Any) -> FiniteBlaschkeProduct:
    """Build a Blaschke product from ``{"lambda": {...}, "zeros": [{...}, ...]}``.

    ``lambda`` defaults to 1 and must be unimodular within 1e-9; it is then
    normalised to modulus one.

    Raises:
        InvalidInput: For a malformed document or a non-unimodular lambda
        OutsideDisk: For a zero outside the open unit disk
    """
    if not isinstance(data, dict):
        raise InvalidInput("Blaschke specification must be a JSON object")
    lam = complex_from_json(data.get("lambda", {"re": 1.0, "im": 0.0}), "lambda")
    if abs(abs(lam) - 1.0) > LAMBDA_UNIMODULAR:
        raise InvalidInput(f"lambda must be unimodular, |lambda| = {abs(lam)!r}")
    zeros = data.get("zeros")
    if not isinstance(zeros, list) or not zeros:
        raise InvalidInput("'zeros' must be a non-empty list")
    parsed = tuple(complex_from_json(z, f"zeros[{k}]") for k, z in enumerate(zeros))
    return FiniteBlaschkeProduct(lam / abs(lam), parsed)


def blaschke_spec_to_json(B: FiniteBlaschkeProduct) -> Dict[str, Any]:
    return {"lambda": complex_to_json(B.lam), "zeros": [complex_to_json(a) for a in B.zeros]}


def _grid_to_json(grid: BranchGrid) -> Dict[str, Any]:
    spec = grid.spec
    jittered: List[List[float]] = []
    if grid.node_radii is not None:
        moved = grid.node_radii != spec.radii[:, None]
        jittered = [[int(i), int(j), float(grid.node_radii[i, j])] for i, j in zip(*np.nonzero(moved))]
    return {
        "spec": {"n_radii": spec.n_radii, "n_angles": spec.n_angles, "r_max": spec.r_max},
        "seed_index": grid.seed_index,
        "seed_value": complex_to_json(grid.seed_value),
        "monodromy_ok": grid.monodromy_ok,
        "max_step_refinements": grid.max_step_refinements,
        "closure_defect": grid.closure_defect,
        "consistency_defect": grid.consistency_defect,
        "passing_seed_count": grid.passing_seed_count,
        "algebraic_branch_index": grid.algebraic_branch_index,
        "jittered_nodes": jittered,
        "values": [complex_to_json(v) for v in grid.values.ravel()],
    }


def _grid_from_json(data: Dict[str, Any]) -> BranchGrid:
    spec = PolarGridSpec(int(data["spec"]["n_radii"]), int(data["spec"]["n_angles"]), float(data["spec"]["r_max"]))
    values = np.array([complex_from_json(v, "phi_grid value") for v in data["values"]], dtype=complex)
    if values.size != spec.n_radii * spec.n_angles:
        raise InvalidInput(f"phi_grid holds {values.size} values, expected {spec.n_radii * spec.n_angles}")
    node_radii = np.repeat(spec.radii[:, None], spec.n_angles, axis=1)
    for i, j, r in data.get("jittered_nodes", []):
        node_radii[int(i), int(j)] = float(r)
    branch = data.get("algebraic_branch_index")
    return BranchGrid(
        spec=spec,
        values=values.reshape(spec.n_radii, spec.n_angles),
        seed_index=int(data["seed_index"]),
        seed_value=complex_from_json(data["seed_value"], "seed_value"),
        monodromy_ok=bool(data["monodromy_ok"]),
        max_step_refinements=int(data["max_step_refinements"]),
        closure_defect=float(data["closure_defect"]),
        consistency_defect=float(data["consistency_defect"]),
        passing_seed_count=int(data["passing_seed_count"]),
        algebraic_branch_index=None if branch is None else int(branch),
        node_radii=node_radii,
    )


def serialize_model(m: ConformalModel) -> Dict[str, Any]:
    """The model file document for ``m``."""
    tau: Optional[Dict[str, Any]] = None
    if m.pre_automorphism is not None:
        tau = {"a": complex_to_json(m.pre_automorphism.a), "theta": m.pre_automorphism.theta}
    form: Optional[Dict[str, Any]] = None
    if m.equally_spaced is not None:
        form = {
            "lambda": complex_to_json(m.equally_spaced.lam),
            "base": complex_to_json(m.equally_spaced.base),
            "n": m.equally_spaced.n,
        }
    depressed = None
    if m.depressed is not None:
        depressed = {"c": complex_to_json(m.depressed.c), "d": complex_to_json(m.depressed.d)}
    grid = _grid_to_json(m.phi.grid) if isinstance(m.phi, TrackedBranch) else None
    return {
        "case": m.case.value,
        "p_coeffs": [complex_to_json(c) for c in m.p.coeffs],
        "pre_automorphism": tau,
        "equally_spaced": form,
        "depressed": depressed,
        "critical_points": [{"z": complex_to_json(z), "multiplicity": k} for z, k in m.critical_points],
        "critical_values": [complex_to_json(k) for k in m.critical_values],
        "phi_grid": grid,
        "residual": m.residual_certificate,
    }


def parse_model(data: Any, B: FiniteBlaschkeProduct) -> ConformalModel:
    """Rebuild a model from its document; ``B`` supplies ``phi`` where it depends on it.

    Raises:
        InvalidInput: For a malformed or inconsistent document
    """
    if not isinstance(data, dict):
        raise InvalidInput("model file must be a JSON object")
    try:
        case = ModelCase(data["case"])
        p = ComplexPolynomial(tuple(complex_from_json(c, "p_coeffs") for c in data["p_coeffs"]))
        tau = None
        if data.get("pre_automorphism") is not None:
            raw = data["pre_automorphism"]
            tau = MobiusDisk(complex_from_json(raw["a"], "pre_automorphism.a"), float(raw["theta"]))
        form = None
        if data.get("equally_spaced") is not None:
            raw = data["equally_spaced"]
            form = EquallySpacedForm(
                complex_from_json(raw["lambda"], "equally_spaced.lambda"),
                complex_from_json(raw["base"], "equally_spaced.base"),
                int(raw["n"]),
            )
        depressed = None
        if data.get("depressed") is not None:
            raw = data["depressed"]
            depressed = DepressedCubic(complex_from_json(raw["c"], "depressed.c"), complex_from_json(raw["d"], "depressed.d"))
        points = tuple(
            (complex_from_json(item["z"], "critical_points.z"), int(item["multiplicity"]))
            for item in data.get("critical_points", [])
        )
        values = tuple(complex_from_json(k, "critical_values") for k in data["critical_values"])
        residual = float(data["residual"])

        if case is ModelCase.DEGREE1:
            phi = IdentityOfB(B)
        elif case is ModelCase.EQUALLY_SPACED:
            if form is None:
                raise InvalidInput("equally_spaced model without 'equally_spaced' parameters")
            phi = ClosedFormEquallySpaced(form.base, form.n)
        else:
            if depressed is None or data.get("phi_grid") is None:
                raise InvalidInput("degree3_generic model needs 'depressed' and 'phi_grid'")
            phi = TrackedBranch(_grid_from_json(data["phi_grid"]), depressed, B)
    except (KeyError, TypeError, ValueError) as err:
        raise InvalidInput(f"malformed model file: {err!r}") from err

    if p.degree != B.degree:
        raise InvalidInput(f"model degree {p.degree} does not match Blaschke degree {B.degree}")
    return ConformalModel(case, p, phi, tau, values, residual, depressed, form, points)


def _write_atomic(path: PathLike, text: str):
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug("wrote %s", target)


def write_json_atomic(path: PathLike, data: Any):
    """Write JSON through a temporary file in the same directory, then rename."""
    _write_atomic(path, json.dumps(data, indent=2) + "\n")


def write_text_atomic(path: PathLike, text: str):
    _write_atomic(path, text)
