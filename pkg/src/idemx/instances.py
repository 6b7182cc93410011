"""JSON instance files: parsing with invariant enforcement, and serialization.

Schema is inferred from the fields present:

* space      {"points": [...], "min_nbhd": {"p": ["p", "w"], ...}}
* metric     {"points": [...], "dist": [[...], ...]}
* embedding  {"ambient": <space>, "subset": [...]}
* setmap     {"domain": <space>, "codomain": <space>, "map": {"w": ["p"], ...}}
* functional {"space": <space>, "kind": "support", "min": true, "F": [...]}
             {"space": <space>, "kind": "density", "lambda": {"a": 0, "b": null}}
             {"space": <space>, "kind": "mean"}
             {"space": <space>, "kind": "table", "lo": 0, "hi": 1, "table": {...}}

Density weights accept numbers, null, or "-inf" for excluded points.  Table
functionals enumerate values on two-valued inputs only; keys are the
comma-joined names of the points at the high value.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InvariantViolation, ParseError
from .functionals import (
    NEG_INF,
    Functional,
    IdempotentDensity,
    MeanFunctional,
    SupportFunctional,
    TableFunctional,
)
from .setmaps import SetValuedMap, setmap
from .spaces import (
    FiniteTopSpace,
    MetricSpace,
    SubspaceEmbedding,
    from_minimal_basis,
)

Instance = (
    FiniteTopSpace | MetricSpace | SetValuedMap | Functional | SubspaceEmbedding
)


def parse_instance(path: str | Path) -> Instance:
    """Load and validate one instance file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return load_instance(data)


def load_instance(data: Any) -> Instance:
    """Build the instance object a JSON payload describes."""
    if not isinstance(data, dict):
        raise ParseError("instance must be a JSON object")
    if "kind" in data:
        return load_functional(data)
    if "map" in data:
        return load_setmap(data)
    if "ambient" in data:
        return load_embedding(data)
    if "dist" in data:
        return load_metric(data)
    if "min_nbhd" in data:
        return load_space(data)
    raise ParseError(f"fields {sorted(data)} match no known instance schema")


def load_space(data: dict) -> FiniteTopSpace:
    points = data.get("points")
    nbhd = data.get("min_nbhd")
    if not isinstance(nbhd, dict):
        raise ParseError("min_nbhd must be an object")
    return from_minimal_basis(nbhd, points)


def load_metric(data: dict) -> MetricSpace:
    points = data.get("points")
    if not isinstance(points, list) or not points:
        raise ParseError("metric space needs a nonempty points list")
    return MetricSpace(tuple(points), np.asarray(data["dist"], dtype=float))


def load_embedding(data: dict) -> SubspaceEmbedding:
    ambient = load_space(data["ambient"])
    subset = data.get("subset")
    if not isinstance(subset, list):
        raise ParseError("embedding needs a subset list")
    return SubspaceEmbedding(ambient, tuple(subset))


def load_setmap(data: dict) -> SetValuedMap:
    if "domain" not in data or "codomain" not in data:
        raise ParseError("setmap needs embedded domain and codomain spaces")
    domain = load_space(data["domain"])
    codomain = load_space(data["codomain"])
    return setmap(domain, codomain, data["map"])


def load_functional(data: dict) -> Functional:
    if "space" not in data:
        raise ParseError("functional needs an embedded space")
    space = load_space(data["space"])
    kind = data["kind"]
    if kind == "support":
        f = data.get("F", [])
        if not f:
            raise InvariantViolation("F.nonempty", "support set must be nonempty")
        return SupportFunctional(
            space, "min" if data.get("min", True) else "max", space.mask(f)
        )
    if kind == "density":
        lam = data.get("lambda")
        if not isinstance(lam, dict):
            raise ParseError("density needs a lambda object")
        vals = []
        for p in space.points:
            v = lam.get(p)
            if v is None or v == "-inf":
                vals.append(NEG_INF)
            else:
                vals.append(float(v))
        return IdempotentDensity(space, tuple(vals))
    if kind == "mean":
        return MeanFunctional(space)
    if kind == "table":
        table_in = data.get("table", {})
        values = [0.0] * (1 << space.n)
        seen = set()
        for key, val in table_in.items():
            ids = [s for s in key.split(",") if s]
            mask = space.mask(ids)
            values[mask] = float(val)
            seen.add(mask)
        if len(seen) != 1 << space.n:
            raise InvariantViolation(
                "table.complete", "need one value per two-valued pattern"
            )
        return TableFunctional(space, float(data["lo"]), float(data["hi"]), tuple(values))
    raise ParseError(f"unknown functional kind {kind!r}")


# -- serialization -------------------------------------------------------------


def space_to_json(space: FiniteTopSpace) -> dict:
    return {
        "points": list(space.points),
        "min_nbhd": {p: list(space.ids(m)) for p, m in zip(space.points, space.min_nbhd)},
    }


def metric_to_json(metric: MetricSpace) -> dict:
    return {"points": list(metric.points), "dist": metric.dist.tolist()}


def embedding_to_json(e: SubspaceEmbedding) -> dict:
    return {"ambient": space_to_json(e.ambient), "subset": list(e.subset)}


def setmap_to_json(r: SetValuedMap) -> dict:
    return {
        "domain": space_to_json(r.domain),
        "codomain": space_to_json(r.codomain),
        "map": {p: list(ids) for p, ids in r.as_dict().items()},
    }


def functional_to_json(mu: Functional) -> dict:
    if isinstance(mu, SupportFunctional):
        return {
            "space": space_to_json(mu.space),
            "kind": "support",
            "min": mu.kind == "min",
            "F": list(mu.space.ids(mu.member)),
        }
    if isinstance(mu, IdempotentDensity):
        return {
            "space": space_to_json(mu.space),
            "kind": "density",
            "lambda": {
                p: ("-inf" if v == NEG_INF else v)
                for p, v in zip(mu.space.points, mu.lam)
            },
        }
    if isinstance(mu, MeanFunctional):
        return {"space": space_to_json(mu.space), "kind": "mean"}
    raise ParseError(f"functional {mu.label!r} has no file form")
