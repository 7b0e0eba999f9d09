"""Runs the CLI with --out json and validates every document against schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

iks, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
registry = Registry().with_resources(
    (name, Resource.from_contents(s)) for name, s in schemas.items()
)

RUNS = [
    ("field.schema.json", ["field", "--p", "3", "--a", "2", "--k", "2"]),
    ("field.schema.json", ["field", "--p", "13"]),
    ("value.schema.json", ["gauss", "--p", "5", "--chi", "1"]),
    ("value.schema.json", ["gauss", "--p", "3", "--a", "2", "--chi", "0"]),
    ("value.schema.json", ["sum", "--p", "3", "--n", "1", "--b", "1"]),
    ("value.schema.json", ["sum", "--p", "5", "--n", "2", "--b", "2", "--chi", "0,1,3"]),
    ("value.schema.json", ["sum", "--p", "3", "--n", "1", "--k", "3", "--b", "2"]),
    ("value.schema.json", ["toric", "--p", "3", "--n", "1", "--b", "1"]),
    ("value.schema.json", ["toric", "--p", "5", "--poly", "x1 + x2 + 2*x1^-1*x2^-1", "--chi", "1,0"]),
    ("lfun.schema.json", ["lfun", "--p", "3", "--n", "1", "--b", "1", "--kmax", "4"]),
    ("lfun.schema.json", ["lfun", "--p", "5", "--n", "1", "--b", "2"]),
    ("lfun.schema.json", ["lfun", "--p", "5", "--n", "2", "--b", "1"]),
    ("polytope.schema.json", ["polytope", "--n", "2", "--p", "7"]),
    ("polytope.schema.json", ["polytope", "--vertices", '{"vertices": [[2,0],[0,2]]}']),
    ("polytope.schema.json", ["polytope", "--p", "3", "--poly", "x1 + x2 + 2*x1^-1*x2^-1"]),
    ("verify.schema.json", ["verify", "thm0", "--p", "5", "--n", "1"]),
    ("verify.schema.json", ["verify", "thm2", "--p", "3", "--n", "1,2"]),
    ("verify.schema.json", ["verify", "cor1", "--p", "3", "--n", "1"]),
    ("verify.schema.json", ["verify", "thm1", "--p", "3", "--n", "1"]),
    ("verify.schema.json", ["verify", "prop31", "--n", "4"]),
    ("verify.schema.json", ["verify", "thm33", "--n", "1,2"]),
    ("verify.schema.json", ["verify", "identities", "--p", "3", "--n", "1", "--timing"]),
]

failures = 0
for schema, args in RUNS:
    proc = subprocess.run([iks, *args, "--out", "json"], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode != 0:
        print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        continue
    try:
        doc = json.loads(proc.stdout)
        validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
        validator.validate(doc)
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        print(f"FAIL {label}: {e}")
        failures += 1
        continue
    print(f"ok   {label}")

sys.exit(1 if failures else 0)
