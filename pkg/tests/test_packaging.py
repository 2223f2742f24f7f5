import os.path
import re

import toml

ROOT = os.path.dirname(os.path.dirname(__file__))


def pyproject():
    return toml.load(os.path.join(ROOT, "pyproject.toml"))


def test_runtime_dependencies() -> None:
    deps = {re.split(r"[<>=\[]", d)[0] for d in pyproject()["project"]["dependencies"]}
    assert deps == {"go-flag", "jsonschema", "sympy"}


def test_schema_is_package_data() -> None:
    data = pyproject()["tool"]["setuptools"]["package-data"]["ladder"]
    assert "schemas/*.json" in data
    schema = os.path.join(ROOT, "ladder", "schemas", "document-1.0.0.json")
    assert os.path.exists(schema)


def test_publish_script_uploads_this_distribution() -> None:
    name = pyproject()["project"]["name"].replace("-", "_")
    with open(os.path.join(ROOT, "scripts", "publish.sh")) as f:
        script = f.read()
    assert "uv build" in script
    assert f"uv publish dist/{name}-*" in script
