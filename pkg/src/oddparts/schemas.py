"""JSON Schemas for the CLI's ``--format json`` output."""

_DEC = {"type": "string", "pattern": "^-?[0-9]+$"}
_PART = {"type": "array", "items": {"type": "integer", "minimum": 1}}

COUNT = {
    "type": "object",
    "required": ["family", "method", "rows"],
    "properties": {
        "family": {"enum": ["pod", "podgt2", "o1", "o2", "o3", "c"]},
        "method": {"enum": ["enumeration", "series", "both"]},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n"],
                "properties": {
                    "n": _DEC,
                    "count": _DEC,
                    "enumeration": _DEC,
                    "series": _DEC,
                    "match": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

ENUMERATE = {
    "type": "object",
    "required": ["family", "n", "count", "partitions"],
    "properties": {
        "family": {"enum": ["all", "pod", "podgt2", "o1", "o2", "o3", "c"]},
        "n": _DEC,
        "count": _DEC,
        "partitions": {"type": "array", "items": _PART},
    },
    "additionalProperties": False,
}

MAPPING = {
    "type": "object",
    "required": ["theorem", "input", "case", "mu", "alpha", "beta", "phi_beta", "output", "target"],
    "properties": {
        "theorem": {"enum": ["3.1", "3.2"]},
        "input": _PART,
        "case": {"type": "string", "pattern": "^([1-9]|1[01]|B[12])$"},
        "mu": {"anyOf": [_PART, {"type": "null"}]},
        "alpha": _PART,
        "beta": _PART,
        "phi_beta": _PART,
        "output": _PART,
        "target": {"type": "string", "pattern": r"^(O1|O3|C)\(-?[0-9]+\)$"},
    },
    "additionalProperties": False,
}

OPERATION = {
    "type": "object",
    "required": ["operation", "input"],
    "properties": {
        "operation": {"enum": ["phi", "phi-inverse", "split", "union"]},
        "input": _PART,
        "with": _PART,
        "output": _PART,
        "alpha": _PART,
        "beta": _PART,
    },
    "additionalProperties": False,
}

REPORT = {
    "type": "object",
    "required": ["subject", "passed", "methods", "range", "rows", "failure_count", "failures", "notes",
                 "wall_time"],
    "properties": {
        "subject": {"type": "string"},
        "passed": {"type": "boolean"},
        "methods": {"type": "array", "items": {"type": "string"}},
        "range": {"anyOf": [{"type": "null"}, {"type": "array", "items": _DEC, "minItems": 2, "maxItems": 2}]},
        "rows": {"type": "array", "items": {"type": "object"}},
        "failure_count": _DEC,
        "failures": {"type": "array", "items": {"type": "object"}},
        "notes": {"type": "object"},
        "wall_time": {"type": "string"},
    },
    "additionalProperties": False,
}

SERIES = {
    "type": "object",
    "required": ["name", "order", "coeffs"],
    "properties": {
        "name": {"type": "string"},
        "order": {"type": "integer", "minimum": 0},
        "coeffs": {"type": "array", "items": _DEC},
    },
    "additionalProperties": False,
}
