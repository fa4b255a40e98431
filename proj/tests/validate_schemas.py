"""Validates fixtures and CLI certificates against the shipped JSON schemas."""
import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

COMPONENTS = {
    "field": "field.json",
    "sheaf": "sheaf.json",
    "complex": "complex.json",
    "gluing": "gluing.json",
}

# fixture, command, top-level structure schema (by document shape)
RUNS = [
    ("descend_vect_qi.json", "descend-vect"),
    ("descend_vect_f4.json", "descend-vect"),
    ("broken_cocycle_qi.json", "check-gstructure"),
    ("twisted_chain_qi.json", "descend-sheaf"),
    ("incompatible_chain_qi.json", "descend-sheaf"),
    ("twisted_complex_qi.json", "descend-complex"),
    ("homotopy_only_complex_qi.json", "descend-complex"),
    ("jordan_gluing_q.json", "extend"),
    ("jordan_gluing_bad_relation_q.json", "extend"),
    ("twisted_disc_qi.json", "descend-gluing"),
    ("malformed.json", "descend-vect"),
    ("future_schema.json", "descend-vect"),
    ("reducible_f2.json", "descend-vect"),
]


def load_schemas(directory):
    schemas = {p.name: json.loads(p.read_text()) for p in directory.glob("*.json")}
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())
    return schemas, registry


def validator(schemas, registry, name, pointer=None):
    schema = {"$ref": f"{name}#{pointer}"} if pointer else schemas[name]
    return jsonschema.Draft202012Validator(schema, registry=registry)


def structure_pointer(doc):
    if "sheaf" in doc:
        return "sheaf.json", "/$defs/structure"
    if "complex" in doc:
        return "complex.json", "/$defs/structure"
    if "gluing" in doc:
        return "gluing.json", "/$defs/structure"
    return "gstructure.json", None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--schemas", type=pathlib.Path, required=True)
    ap.add_argument("--fixtures", type=pathlib.Path, required=True)
    ap.add_argument("--cli", required=True)
    args = ap.parse_args()

    schemas, registry = load_schemas(args.schemas)
    for s in schemas.values():
        jsonschema.Draft202012Validator.check_schema(s)
    errors = []

    for path in sorted(args.fixtures.glob("*.json")):
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError:
            continue
        for key, name in COMPONENTS.items():
            if key in doc:
                for e in validator(schemas, registry, name).iter_errors(doc[key]):
                    errors.append(f"{path.name}/{key}: {e.message}")
        if "structure" in doc:
            name, pointer = structure_pointer(doc)
            for e in validator(schemas, registry, name, pointer).iter_errors(doc["structure"]):
                errors.append(f"{path.name}/structure: {e.message}")

    cert_validator = validator(schemas, registry, "certificate.json")
    with tempfile.TemporaryDirectory() as tmp:
        for fixture, command in RUNS:
            out = pathlib.Path(tmp) / "cert.json"
            subprocess.run([args.cli, command, "--in", str(args.fixtures / fixture), "--out", str(out)],
                           capture_output=True, check=False)
            cert = json.loads(out.read_text())
            for e in cert_validator.iter_errors(cert):
                errors.append(f"certificate of {command} {fixture}: {e.message}")
            if cert.get("status") == "pass":
                subprocess.run([args.cli, "verify", "--in", str(out), "--out", str(out)], capture_output=True, check=True)
                for e in cert_validator.iter_errors(json.loads(out.read_text())):
                    errors.append(f"verify certificate of {fixture}: {e.message}")

    for e in errors:
        print(e)
    print(f"{len(errors)} schema violation(s)")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
