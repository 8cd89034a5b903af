"""Run every lpa subcommand on the fixtures and validate the JSON output."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

lpa, schema_dir, fixture_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.json")}
registry = Registry().with_resources(
    (s["$id"], Resource.from_contents(s)) for s in schemas.values())
for name, s in schemas.items():
    jsonschema.Draft202012Validator.check_schema(s)

HEDGEHOG_ARGS = {
    "chain3sink": ["--H", "v2,v3", "--depth", "2"],
    "omega-h": ["--H", "h", "--S", "u"],
    "line2": ["--H", "v2"],
}

failures = 0
checked = 0


def check(schema, args):
    global failures, checked
    out = subprocess.run([lpa, *args], capture_output=True, text=True)
    if out.returncode != 0:
        print(f"FAIL {' '.join(args)}: exit {out.returncode}: {out.stderr}")
        failures += 1
        return
    validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
    errors = list(validator.iter_errors(json.loads(out.stdout)))
    checked += 1
    for e in errors[:3]:
        print(f"FAIL {' '.join(args)}: {e.json_path}: {e.message}")
    failures += bool(errors)


for fixture in sorted(fixture_dir.glob("*.lpa")):
    f = str(fixture)
    first = subprocess.run([lpa, "validate", f], capture_output=True, text=True)
    first_vertex = json.loads(first.stdout)["payload"]["vertices"][0]
    check("validate.json", ["validate", f])
    check("classify.json", ["classify", f])
    check("closure.json", ["closure", f, "--seed", first_vertex])
    check("report.json", ["report", f])
    check("report.json", ["report", f, "--json"])
    if fixture.stem in HEDGEHOG_ARGS:
        check("hedgehog.json", ["hedgehog", f, *HEDGEHOG_ARGS[fixture.stem]])
    check("eval.json", ["eval", f, "--expr", f"2 {first_vertex} - 1/3", "--json", "--graded"])

check("eval.json", ["eval", str(fixture_dir / "chain3.lpa"), "--expr", "a1 a1* + f1", "--json"])
check("selftest.json", ["selftest", "--cases", "5", "--max-vertices", "5"])

print(f"{checked} documents checked, {failures} failures")
sys.exit(1 if failures or checked == 0 else 0)
