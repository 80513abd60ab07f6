"""Walk through the declaration-level front end on a small token contract."""

from solmetrics import count_sloc, parse_source, tokenize

SOURCE = """\
pragma solidity ^0.8.19;

import "./interfaces/IERC20.sol";

// A deliberately small token. The bodies below are skipped by the parser;
// only the declaration headers matter for inheritance analysis.
contract MiniToken is IERC20 {
    mapping(address => uint256) internal held;
    uint256 internal supply;

    function totalSupply() public view returns (uint256) {
        return supply;  /* no rebasing, no surprises */
    }
}

abstract contract Recoverable {
    function rescue(address token) public virtual;
}
"""

tokens = tokenize(SOURCE)
print("token count: %d" % len(tokens))
print("first five:", [(t.kind.name, t.text) for t in tokens[:5]])

raw, sloc = count_sloc(SOURCE)
print("raw lines: %d, source lines: %d" % (raw, sloc))

unit = parse_source(SOURCE, path="mini_token.sol")
print("pragma versions:", unit.pragma_versions)
print("imports:", unit.imports)
for decl in unit.contracts:
    bases = ", ".join(b.name for b in decl.bases) or "(none)"
    print("%-12s %-11s bases: %s" % (decl.name, decl.kind.value, bases))
