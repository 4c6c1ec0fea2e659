#!/usr/bin/env python3
"""Regenerate the canonical fixture corpus under tests/fixtures.

Every .gmap and .jrule file is written through the canonical
serializers, so the round-trip tests can require byte identity.
"""

from pathlib import Path

from gmapkit import Gmap, serialize_gmap, serialize_rule_scheme, parse_rule_scheme
from gmapkit.gmap import EmbeddingLayer
from gmapkit.mesh import PolygonalMesh, unify
from gmapkit.orbits import OrbitType

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

SQUARE = PolygonalMesh(
    ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (1.0, 1.0, 0.0), (0.0, 1.0, 0.0)),
    ((0, 1, 2, 3),),
)
TRIANGLE = PolygonalMesh(
    ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
    ((0, 1, 2),),
)
TWO_TRIANGLES = PolygonalMesh(
    ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (1.0, 1.0, 0.0), (0.0, 1.0, 0.0)),
    ((0, 1, 2), (0, 2, 3)),
)
FAN3 = PolygonalMesh(
    ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (-1.0, -1.0, 0.0)),
    ((0, 1, 2), (0, 2, 3), (0, 3, 1)),
)

RULES = {
    "vertex_insert_02.jrule": """
        rule VI <0,2> {
          left  { n0: <0,2> hook }
          right { n0: <_,2>  n1: <1,2>  n0 -0- n1 }
        }
    """,
    "vertex_insert_2.jrule": """
        rule VI2 <2> {
          left  { n0: <2> hook  n3: <2>  n0 -0- n3 }
          right { n0: <2>  n1: <2>  n2: <2>  n3: <2>
                  n0 -0- n1  n1 -1- n2  n2 -0- n3 }
        }
    """,
    "identity_edge.jrule": """
        rule Keep <0,2> {
          left  { n0: <0,2> hook }
          right { n0: <0,2> }
        }
    """,
    "broken_double_zero.jrule": """
        rule Broken <0,2> {
          left  { n0: <0,2> hook }
          right { n0: <0,2>  n1: <1,2>  n0 -0- n1 }
        }
    """,
}


def gmaps() -> dict[str, Gmap]:
    out = {}
    out["free_edge.gmap"] = Gmap.build(
        2, ["a", "b"], [(0, {"a", "b"}), (2, {"a"}), (2, {"b"})]
    )
    out["sewn_edge.gmap"] = Gmap.build(
        2,
        ["a", "b", "c", "d"],
        [(0, {"a", "b"}), (0, {"c", "d"}), (2, {"a", "c"}), (2, {"b", "d"})],
    )
    out["square.gmap"] = unify(SQUARE)
    out["triangle.gmap"] = unify(TRIANGLE)
    out["two_triangles.gmap"] = unify(TWO_TRIANGLES)

    colored = unify(SQUARE)
    col = EmbeddingLayer(
        "col", OrbitType((0, 1)), "color_rgb", {d: (200, 40, 40) for d in colored.darts}
    )
    out["square_colored.gmap"] = Gmap(
        colored.graph, list(colored.embeddings.values()) + [col]
    )

    out["segment_1d.gmap"] = Gmap.build(
        1, ["a", "b"], [(0, {"a", "b"}), (1, {"a"}), (1, {"b"})]
    )
    out["single_dart.gmap"] = Gmap.build(2, ["d"], [(i, {"d"}) for i in range(3)])

    out["broken_incidence.gmap"] = Gmap.build(2, ["a", "b"], [(0, {"a", "b"})])

    # three faces around one edge: every dart gets a second 2-link
    darts = ["a1", "a2", "a3", "b1", "b2", "b3"]
    links = [(0, {f"a{k}", f"b{k}"}) for k in (1, 2, 3)]
    links += [(1, {d}) for d in darts]
    links += [(2, {x, y}) for x, y in (("a1", "a2"), ("a1", "a3"), ("a2", "a3"))]
    links += [(2, {x, y}) for x, y in (("b1", "b2"), ("b1", "b3"), ("b2", "b3"))]
    out["broken_three_faces.gmap"] = Gmap.build(2, darts, links)

    # incidence-clean but with an open 0-2 path
    out["broken_cycle.gmap"] = Gmap.build(
        2,
        ["a", "b", "c", "d"],
        [(0, {"a", "b"}), (0, {"c", "d"}), (2, {"b", "c"}), (2, {"a"}), (2, {"d"})]
        + [(1, {d}) for d in "abcd"],
    )
    return out


def off_text(mesh: PolygonalMesh) -> str:
    lines = ["OFF", f"{len(mesh.vertices)} {len(mesh.faces)} 0"]
    for v in mesh.vertices:
        lines.append(" ".join(repr(c) for c in v))
    for f in mesh.faces:
        lines.append(" ".join(str(i) for i in (len(f),) + f))
    return "\n".join(lines) + "\n"


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, text in RULES.items():
        rule = parse_rule_scheme(text)
        (FIXTURES / name).write_text(serialize_rule_scheme(rule), newline="\n")
    for name, g in gmaps().items():
        (FIXTURES / name).write_text(serialize_gmap(g), newline="\n")
    for name, mesh in (
        ("square.off", SQUARE),
        ("triangle.off", TRIANGLE),
        ("two_triangles.off", TWO_TRIANGLES),
        ("fan3.off", FAN3),
    ):
        (FIXTURES / name).write_text(off_text(mesh), newline="\n")
    print(f"wrote fixtures to {FIXTURES}")


if __name__ == "__main__":
    main()
