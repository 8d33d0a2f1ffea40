"""Reports and the command-line interface.

The same runs are available from a shell:

    cosinelab verify --reproducible --seed 7
    cosinelab classify family.json --format text
    cosinelab halve family.json --t0 3.141592653589793 --steps 4
    cosinelab converge --n 12 --format csv
"""
import io
import json
import os
import tempfile

from cosinelab import ScalarCos, save_family
from cosinelab.cli import main

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "cos3.json")
    save_family(path, ScalarCos(3))
    buf = io.StringIO()
    code = main(["classify", path, "--reproducible"], buf)
    doc = json.loads(buf.getvalue())
    print("exit", code, "branch", doc["result"]["branch"], "schema", doc["schema_version"])

buf = io.StringIO()
main(["converge", "--n", "8", "--format", "text"], buf)
print(buf.getvalue())
