"""Build an inheritance graph and inspect depths and linearization order.

The diamond below is the classic case where Solidity's C3 rule shows its
hand: D declares `is B, C`, and the linearization visits C before B because
the declared list is reversed before the merge.
"""

import warnings

from solmetrics import (
    LinearizationFailure,
    build_graph,
    c3_linearize,
    children_of,
    depth_of,
    parse_source,
)

DIAMOND = """\
contract A { }
contract B is A { }
contract C is A { }
contract D is B, C { }
"""

unit = parse_source(DIAMOND, path="diamond.sol")
graph = build_graph(unit)
print("nodes:", graph.nodes)
print("edges:", graph.edges)

for name in graph.declared():
    kids = ", ".join(sorted(children_of(graph, name))) or "-"
    print("%s  depth=%d  children: %s" % (name, depth_of(graph, name), kids))

print("C3 of D:", " -> ".join(c3_linearize(graph, "D").order))

# External bases (declared elsewhere, e.g. an imported library contract)
# become dashed placeholder roots rather than errors.
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    ext = build_graph(parse_source("contract Token is Ownable { }\n", path="t.sol"))
print("warning:", caught[0].message)
print("Ownable external?", ext.is_external("Ownable"))

# Not every hierarchy has a consistent order. Solidity wants bases listed
# base-first, so `is B, A` puts the derived B ahead of its own parent and
# the merge dead-ends, a compile error there and a LinearizationFailure here.
BROKEN = """\
contract A { }
contract B is A { }
contract E is B, A { }
"""
bad = build_graph(parse_source(BROKEN, path="broken.sol"))
try:
    c3_linearize(bad, "E")
except LinearizationFailure as exc:
    print("linearization failed as expected:", exc)
