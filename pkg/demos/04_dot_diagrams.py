"""Emit DOT inheritance diagrams, ready for Graphviz.

Pipe the output of this script into `dot -Tpng -o hierarchy.png` to render
it; nothing here depends on Graphviz being installed.
"""

import warnings

from solmetrics import build_graph, emit_dot, measure_unit, parse_source

SOURCE = """\
contract ERC20 { }
contract Pausable { }
contract Ownable { }
contract Token is ERC20, Pausable { }
contract ManagedToken is Token, Ownable { }
contract Sale is SaleBase { }
"""

with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # SaleBase is deliberately undeclared
    unit = parse_source(SOURCE, path="token_suite.sol")
    graph = build_graph(unit)
record = measure_unit(unit, graph)

text = emit_dot(graph, record)
print(text)

# Things worth noticing in the output: edges point child -> parent with
# rankdir=BT so roots end up on top, every label carries the contract's
# DIT, the undeclared SaleBase shows up dashed, and node and edge lines
# are sorted so the same graph always serializes to the same bytes.
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    rebuilt = build_graph(unit)
assert text == emit_dot(rebuilt, record)
