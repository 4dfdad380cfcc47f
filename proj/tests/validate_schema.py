"""Validate the CLI's JSON reports against docs/report.schema.json.

usage: validate_schema.py ELLIPSURF_BINARY SCHEMA
"""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def run(binary, *args):
    proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
    if proc.returncode != 0:
        sys.exit(f"{' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)


def validator(schema, definition):
    sub = {"$schema": schema["$schema"], "$defs": schema["$defs"], "$ref": f"#/$defs/{definition}"}
    return jsonschema.Draft202012Validator(sub)


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    top = jsonschema.Draft202012Validator(schema)

    keysets = set()
    for method in ["auto", "laplace", "lauricella", "mc", "gauss", "asymptotic"]:
        record = run(binary, "area", "--axes", "1,2,3", "--method", method, "--samples", "20000")
        top.validate(record)
        keysets.add(tuple(record))
    if len(keysets) != 1:
        sys.exit(f"field set differs across methods: {keysets}")

    # Volume underflows in double precision: volume and surface_area become null.
    axes_file = write_axes(400, 0.01)
    try:
        top.validate(run(binary, "area", "--axes", "@" + axes_file, "--method", "laplace"))
    finally:
        os.unlink(axes_file)

    validator(schema, "comparison").validate(
        run(binary, "compare", "--axes", "1,2,3", "--methods", "laplace,mc,asymptotic", "--samples", "20000"))
    validator(schema, "bounds").validate(run(binary, "bounds", "--axes", "1,2,3", "--check"))
    validator(schema, "bounds").validate(run(binary, "bounds", "--dims", "20", "--seed", "7"))
    print("schema: all reports valid")


def write_axes(n, value):
    f = tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False)
    f.write("\n".join([str(value)] * n) + "\n")
    f.close()
    return f.name


if __name__ == "__main__":
    main()
