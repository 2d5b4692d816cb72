"""Run every corpus script through the CLI and validate the JSON reports."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    wcalc, schema_path, corpus = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        empty = pathlib.Path(tmp) / "empty.wsq"
        empty.write_text("# nothing\n")
        scripts = sorted(corpus.glob("*.wsq")) + [empty]
        bad = 0
        for script in scripts:
            proc = subprocess.run([wcalc, "run", str(script), "--allow-undetermined"],
                                  capture_output=True, text=True)
            if proc.returncode == 2:
                print(f"{script.name}: usage/parse error\n{proc.stderr}")
                bad += 1
                continue
            report = json.loads(proc.stdout)
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            for e in errors:
                print(f"{script.name}: {'/'.join(map(str, e.path))}: {e.message}")
            bad += bool(errors)
            print(f"{script.name}: {len(report['records'])} records, {'ok' if not errors else 'INVALID'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
