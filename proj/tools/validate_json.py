#!/usr/bin/env python3
"""Validate a riesz_eq JSON output against one of the shipped schemas.

usage: validate_json.py SCHEMA INSTANCE
Exit status 0 when valid, 1 on a validation error, 2 on unreadable input.
"""
import json
import sys

import jsonschema


def main(argv):
    if len(argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    try:
        with open(argv[1]) as fh:
            schema = json.load(fh)
        with open(argv[2]) as fh:
            instance = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"validate_json: {exc}", file=sys.stderr)
        return 2
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.path))
    for err in errors:
        print(f"validate_json: {'/'.join(map(str, err.path))}: {err.message}", file=sys.stderr)
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
