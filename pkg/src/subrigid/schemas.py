"""JSON Schemas for the ``--format json`` output of each CLI command."""

_word = {"type": "string", "pattern": "^[A-Za-z]*$"}
_words = {"type": "array", "items": _word}
_nat = {"type": "integer", "minimum": 0}

GRAPH = {
    "type": "object",
    "required": ["rank", "vertices", "basepoint", "edges"],
    "additionalProperties": False,
    "properties": {
        "rank": {"type": "integer", "minimum": 1, "maximum": 26},
        "vertices": {"type": "integer", "minimum": 1},
        "basepoint": {"const": 0},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": _nat, "minItems": 3, "maxItems": 3},
        },
    },
}

CERTIFICATE = {
    "type": "object",
    "required": ["sum", "bound", "holds", "components"],
    "properties": {
        "sum": _nat,
        "bound": _nat,
        "holds": {"type": "boolean"},
        "components": {"type": "array", "items": _nat},
    },
}

# check-* counterexamples additionally carry "seed" and a "replay" command line
CHECK = {
    "type": "object",
    "required": ["name", "passed", "checked", "violations", "counterexample"],
    "properties": {
        "name": {"type": "string"},
        "passed": {"type": "boolean"},
        "checked": _nat,
        "violations": _nat,
        "counterexample": {"type": ["object", "null"]},
        "notes": {"type": "object"},
        "seconds": {"type": "number"},
    },
}

ANALYZE = {
    "type": "object",
    "required": [
        "ambient_rank", "subgroup_rank", "pi_bar", "beta0", "beta1", "chi",
        "compressed", "strictly_compressed", "l2_closed", "closure_basis",
    ],
    "additionalProperties": False,
    "properties": {
        "ambient_rank": _nat,
        "subgroup_rank": _nat,
        "pi_bar": _nat,
        "beta0": _nat,
        "beta1": _nat,
        "chi": {"type": "integer"},
        "compressed": {"type": "boolean"},
        "strictly_compressed": {"type": "boolean"},
        "l2_closed": {"type": "boolean"},
        "closure_basis": _words,
    },
}

SCHEMAS = {
    "fold": GRAPH,
    "export": GRAPH,
    "intersect": GRAPH,
    "join": GRAPH,
    "rank": {
        "type": "object",
        "required": ["rank", "index"],
        "properties": {"rank": _nat, "index": {"type": ["integer", "null"]}},
    },
    "basis": _words,
    "closure": _words,
    "member": {"type": "object", "additionalProperties": {"type": "boolean"}},
    "quotients": {
        "type": "object",
        "required": ["count", "min_rank", "rank_histogram"],
        "properties": {
            "count": _nat,
            "min_rank": _nat,
            "rank_histogram": {"type": "object", "additionalProperties": _nat},
            "members": {"type": "array", "items": _words},
        },
    },
    "pibar": {"type": "object", "required": ["pi_bar"], "properties": {"pi_bar": _nat}},
    "crit": {
        "type": "object",
        "required": ["pi_bar", "members", "closure"],
        "properties": {"pi_bar": _nat, "members": {"type": "array", "items": _words}, "closure": _words},
    },
    "analyze": ANALYZE,
    "check-inert": CHECK,
    "check-strong-inert": CHECK,
    "check-crit-lattice": CHECK,
    "selftest": {
        "type": "object",
        "required": ["seed", "budget", "passed", "suites"],
        "properties": {
            "seed": {"type": "integer"},
            "budget": {"type": "integer"},
            "passed": {"type": "boolean"},
            "suites": {"type": "array", "items": CHECK},
        },
    },
}
