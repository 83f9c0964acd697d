"""Runs the CLI on the sample workspace and validates every --json document
against schema/fincat.schema.json.  Also pins the exit codes."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

fincat, source = sys.argv[1], Path(sys.argv[2])
schema = json.loads((source / "schema" / "fincat.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)
ws = str(source / "data" / "basics.fincat")
# inverting both arrows of a parallel pair leaves a free group on f^-1 g
scratch = tempfile.NamedTemporaryFile("w", suffix=".fincat", delete=False)
scratch.write("category Par { objects a b; arrows f: a -> b, g: a -> b }\n")
scratch.close()

cases = [
    (["check", ws], 0),
    (["construct", "comma", ws, "K", "K"], 0),
    (["construct", "comma", ws, "Pt", "Pt"], 0),
    (["construct", "cocomma", ws, "H", "H"], 0),
    (["construct", "localize", ws, "E"], 0),
    (["construct", "localize", ws, "S", "s"], 0),
    (["fib", "mark", ws, "K"], 0),
    (["fib", "straighten", ws, "Q"], 0),
    (["fib", "unstraighten", ws, "R"], 0),
    (["fib", "localize", ws, "R"], 0),
    (["fib", "conduche", ws, "K"], 0),
    (["fib", "conduche", ws, "Pt"], 1),
    (["verify", "conduche-counterexample"], 0),
    (["verify", "constructions", "workspace"], 0),
    (["construct", "localize", scratch.name, "Par", "f", "g"], 3),
]

failures = 0
for args, code in cases:
    run = subprocess.run([fincat, "--json", *args], capture_output=True, text=True)
    label = " ".join(args).replace(str(source) + "/", "")
    problem = None
    if run.returncode != code:
        problem = f"exit {run.returncode}, expected {code}: {run.stderr.strip()}"
    else:
        try:
            errors = list(validator.iter_errors(json.loads(run.stdout)))
            if errors:
                problem = f"{errors[0].json_path}: {errors[0].message[:200]}"
        except json.JSONDecodeError as e:
            problem = f"not JSON: {e}"
    failures += problem is not None
    print(f"{'ok  ' if problem is None else 'FAIL'} {label}" + (f"  -- {problem}" if problem else ""))

for args, code in [(["check", str(source / "README.md")], 2), (["verify", "no-such-suite"], 2),
                   (["construct", "comma", ws, "H", "K"], 2)]:
    run = subprocess.run([fincat, *args], capture_output=True, text=True)
    ok = run.returncode == code
    failures += not ok
    print(f"{'ok  ' if ok else 'FAIL'} {' '.join(args[:2])} exits {run.returncode}")

Path(scratch.name).unlink()

sys.exit(1 if failures else 0)
