import json
from pathlib import Path
from collections import defaultdict

from checks import check_descriptors

CONFIG_DIR = Path(__file__).resolve().parent / "configs"

WORKED_EXAMPLES = {}

for path in sorted((CONFIG_DIR / "worked_examples").glob("*.json")):
    example_id = path.stem
    WORKED_EXAMPLES[example_id] = json.loads(path.read_text())

RUN_DEFAULTS = {
    "filter": "all",
    "oracle_limit": 60,
    "processes": 0,  # 0 -> cpu count
    "chunksize": 64,
}


def fetch_run_params(config):
    config_path = Path(config) if config.endswith(".json") else CONFIG_DIR / f"{config}.json"
    assert config_path.exists(), f"Run config '{config}' was not found under configs/. Please follow sweep_150.json."
    params = {**RUN_DEFAULTS, **json.loads(config_path.read_text())}

    assert isinstance(params.get("p_max"), int) and params["p_max"] >= 0, "Run config must set a nonnegative integer 'p_max'"
    assert params["filter"] in ("all", "saito_only"), f"Unknown filter '{params['filter']}' in {config_path.name}"
    assert params["oracle_limit"] >= 0, "'oracle_limit' must be nonnegative"
    assert params["processes"] >= 0, "'processes' must be nonnegative"
    assert params["chunksize"] >= 1, "'chunksize' must be positive"
    assert params.get("checks") is None or set(params["checks"]) <= set(check_descriptors), \
        f"Unknown check in {params['checks']}, expected names from {list(check_descriptors)}"

    params["config_name"] = config_path.stem

    # Set all other parameter values to default to None
    params = defaultdict(lambda: None, params)
    return params
