"""JSON document formats.

All numbers travel as canonical strings ("p/q" in lowest terms, plain
integers without the denominator, "0" for zero; residues as decimal
strings), so files round-trip bit-exactly and no float ever appears.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import FormatError
from .fields import QQ, FieldSpec, field_from_tag
from .ktheory import Character, K0Class, SimpleLabelSet, SlopeData
from .moduli import ModuliSet
from .ordered import OrderedSpace, OrderedVector
from .quiver import Algebra, Arrow, Path, Quiver, Relation, RelationSet, algebra_basis
from .reps import Representation, representation
from .stability import HNFiltration, SubrepFamily
from .catalog import WeightData


def rational_to_str(q: Fraction) -> str:
    return QQ.to_str(q)


def str_to_rational(s: str) -> Fraction:
    return QQ.from_str(s)


def vector_to_json(v: OrderedVector) -> list[str]:
    return [rational_to_str(c) for c in v.coords]


def vector_from_json(data: Sequence[str]) -> OrderedVector:
    return OrderedVector.of([str_to_rational(s) for s in data])


def k0_to_json(cls: K0Class) -> list[int]:
    return list(cls.multiplicities)


def k0_from_json(data: Sequence[int]) -> K0Class:
    try:
        return K0Class.of(data)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad class {data!r}") from exc


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()[:12]


def _require(data: Mapping, key: str, context: str):
    try:
        return data[key]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{context}: missing field {key!r}") from exc


def algebra_to_json(algebra: Algebra) -> dict:
    return {
        "vertices": algebra.quiver.vertex_count,
        "arrows": [
            {"name": a.name, "source": a.source, "target": a.target}
            for a in algebra.quiver.arrows
        ],
        "relations": [
            [
                [rational_to_str(coeff), list(path.arrows)]
                for coeff, path in rel.terms
            ]
            for rel in algebra.relations.relations
        ],
    }


def algebra_from_json(data: Mapping, n_max: int = 64) -> Algebra:
    vertices = _require(data, "vertices", "algebra")
    arrows = tuple(
        Arrow(
            _require(a, "name", "arrow"),
            int(_require(a, "source", "arrow")),
            int(_require(a, "target", "arrow")),
        )
        for a in _require(data, "arrows", "algebra")
    )
    quiver = Quiver(int(vertices), arrows)
    relations = []
    for rel in _require(data, "relations", "algebra"):
        terms = []
        for term in rel:
            if not isinstance(term, Sequence) or len(term) != 2:
                raise FormatError("relation terms are [coefficient, [arrow names]]")
            coeff, names = term
            if not names:
                raise FormatError("relation paths cannot be empty")
            first = quiver.arrow(names[0])
            terms.append((str_to_rational(coeff), Path(first.source, tuple(names))))
        relations.append(Relation(tuple(terms)))
    return algebra_basis(quiver, RelationSet(tuple(relations)), n_max)


def representation_to_json(V: Representation) -> dict:
    field = V.field
    return {
        "field": field.tag,
        "dims": list(V.dims),
        "maps": {
            arrow.name: [[field.to_str(x) for x in row] for row in mat]
            for arrow, mat in zip(V.algebra.quiver.arrows, V.maps)
        },
    }


def representation_from_json(data: Mapping, algebra: Algebra) -> Representation:
    field = field_from_tag(_require(data, "field", "representation"))
    dims = [int(d) for d in _require(data, "dims", "representation")]
    maps = {
        name: [[field.from_str(x) for x in row] for row in mat]
        for name, mat in _require(data, "maps", "representation").items()
    }
    return representation(algebra, field, dims, maps)


def _labels_to_json(labels: SimpleLabelSet) -> dict:
    out: dict[str, Any] = {"labels": list(labels.labels)}
    if labels.weights is not None:
        out["weights"] = [vector_to_json(w) for w in labels.weights]
    return out


def _labels_from_json(data: Mapping) -> SimpleLabelSet:
    labels = tuple(_require(data, "labels", "label set"))
    weights = data.get("weights")
    if weights is not None:
        weights = tuple(vector_from_json(w) for w in weights)
    return SimpleLabelSet(labels, weights)


def slope_to_json(s: SlopeData) -> dict:
    out = _labels_to_json(s.labels)
    out.update(
        {
            "dimension": s.space.dimension,
            "c_values": [vector_to_json(v) for v in s.c_values],
            "d_values": [rational_to_str(d) for d in s.d_values],
        }
    )
    return out


def slope_from_json(data: Mapping) -> SlopeData:
    labels = _labels_from_json(data)
    space = OrderedSpace(int(_require(data, "dimension", "slope data")))
    c_values = tuple(vector_from_json(v) for v in _require(data, "c_values", "slope data"))
    d_values = tuple(
        str_to_rational(d) for d in _require(data, "d_values", "slope data")
    )
    return SlopeData(labels, space, c_values, d_values)


def character_to_json(ch: Character) -> dict:
    out = _labels_to_json(ch.labels)
    out.update(
        {
            "values": list(ch.values),
            "bound_class": k0_to_json(ch.bound_class),
        }
    )
    return out


def character_from_json(data: Mapping) -> Character:
    labels = _labels_from_json(data)
    values = tuple(int(v) for v in _require(data, "values", "character"))
    bound = k0_from_json(_require(data, "bound_class", "character"))
    return Character(labels, values, bound)


def weight_data_to_json(w: WeightData) -> dict:
    return {
        "dimension": w.space.dimension,
        "labels": list(w.labels),
        "weights": [vector_to_json(v) for v in w.weights],
    }


def weight_data_from_json(data: Mapping) -> WeightData:
    space = OrderedSpace(int(_require(data, "dimension", "weight data")))
    labels = tuple(_require(data, "labels", "weight data"))
    weights = tuple(vector_from_json(v) for v in _require(data, "weights", "weight data"))
    return WeightData(space, labels, weights)


def classes_from_json(data: Mapping) -> list[K0Class]:
    return [k0_from_json(c) for c in _require(data, "classes", "class list")]


def family_to_json(fam: SubrepFamily, field: FieldSpec) -> list[list[list[str]]]:
    return [
        [[field.to_str(x) for x in row] for row in basis]
        for basis in fam.vertex_bases
    ]


def slope_value_to_json(numerator: OrderedVector, denominator: Fraction) -> dict:
    return {
        "numerator": vector_to_json(numerator),
        "denominator": rational_to_str(denominator),
    }


def hn_to_json(hn: HNFiltration, field: FieldSpec) -> dict:
    steps = []
    for i, fam in enumerate(hn.chain[1:]):
        slope = hn.factor_slopes[i]
        steps.append(
            {
                "subspaces": family_to_json(fam, field),
                "factor_class": k0_to_json(hn.factor_classes[i]),
                "factor_slope": slope_value_to_json(slope.numerator, slope.denominator),
            }
        )
    return {"steps": steps}


def moduli_to_json(ms: ModuliSet) -> dict:
    return {
        "algebra_id": digest(algebra_to_json(ms.algebra)),
        "gamma": k0_to_json(ms.gamma),
        "field": ms.field.tag,
        "slope_digest": digest(slope_to_json(ms.slope)),
        "classes": [
            {
                "representative": representation_to_json(c.representative),
                "stable_factors": [k0_to_json(f) for f in c.factors],
                "absorbed_iso_classes": c.absorbed,
            }
            for c in ms.classes
        ],
    }
