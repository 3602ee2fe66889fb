"""JSON Schemas for the machine-readable CLI outputs."""

VERDICT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FeasibilityVerdict",
    "type": "object",
    "additionalProperties": False,
    "required": [
        "g",
        "deg",
        "l",
        "profile",
        "admissible",
        "reason",
        "lambda",
        "N",
        "witness_partition",
        "witness_shape",
    ],
    "properties": {
        "g": {"type": "integer", "minimum": 2},
        "deg": {"type": "integer", "minimum": 1},
        "l": {"type": "integer", "minimum": 1},
        "profile": {"type": "string"},
        "admissible": {"type": "boolean"},
        "reason": {
            "type": ["string", "null"],
            "enum": [
                None,
                "TrivialIdentity",
                "NotSquare",
                "NoLambda",
                "MorphismExcluded",
                "NoPartition",
                "AmerikExcluded",
                "NoTreeShape",
            ],
        },
        "lambda": {"type": "array", "items": {"type": "integer"}},
        "N": {"type": ["integer", "null"]},
        "witness_partition": {
            "type": ["array", "null"],
            "items": {"type": "integer", "minimum": 1},
        },
        "witness_shape": {"type": ["string", "null"]},
    },
}

TABLE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "AdmissibilityTable",
    "type": "object",
    "required": ["g", "deg", "l_max", "profile", "admissible_l", "verdicts"],
    "properties": {
        "g": {"type": "integer"},
        "deg": {"type": "integer"},
        "l_max": {"type": "integer"},
        "profile": {"type": "string"},
        "admissible_l": {"type": "array", "items": {"type": "integer"}},
        "verdicts": {"type": "array", "items": VERDICT_SCHEMA},
    },
}

TREE_FILE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ExceptionalTreeFile",
    "type": "object",
    "required": ["nodes"],
    "properties": {
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer", "minimum": 1},
                    "parent": {"type": ["integer", "null"], "minimum": 1},
                    "gamma": {"type": ["integer", "null"], "minimum": 0},
                },
            },
        }
    },
}

TREE_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "TreeReport",
    "type": "object",
    "required": [
        "deg",
        "depths",
        "tree_depth",
        "betas",
        "minimal",
        "depth_ok",
        "width_ok",
        "leaf_pair_ok",
        "passed",
    ],
    "properties": {
        "deg": {"type": "integer"},
        "depths": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "tree_depth": {"type": "integer", "minimum": 0},
        "betas": {"type": ["array", "null"], "items": {"type": "integer"}},
        "minimal": {"type": ["boolean", "null"]},
        "depth_ok": {"type": "boolean"},
        "width_ok": {"type": "boolean"},
        "leaf_pair_ok": {"type": "boolean"},
        "passed": {"type": "boolean"},
    },
}
