import json
from pathlib import Path

import jsonlines
import jsonschema

from catalog import CatalogRecord
from knots.laurent import LaurentPoly

SCHEMA_PATH = Path(__file__).resolve().parent / "configs" / "catalog_schema.json"


def poly_to_json(poly):
    if poly is None:
        return None
    return {**poly.to_struct(), "text": poly.to_text()}


def poly_from_json(obj):
    if obj is None:
        return None
    return LaurentPoly.from_struct(obj)


def record_to_json(record):
    return {
        "p": record.p,
        "q": record.q,
        "k": record.k,
        "saito_value": record.saito_value,
        "saito_pass": record.saito_pass,
        "delta": poly_to_json(record.delta),
        "genus": record.genus,
        "formal_genus": record.formal_genus,
        "n_seq": list(record.n_seq),
        "form_pass": record.form_pass,
        "w1_only": record.w1_only,
        "checks": dict(record.checks),
    }


def record_from_json(obj):
    return CatalogRecord(p=obj["p"], q=obj["q"], k=obj["k"], saito_value=obj["saito_value"],
                         saito_pass=obj["saito_pass"], delta=poly_from_json(obj["delta"]), genus=obj["genus"],
                         formal_genus=obj["formal_genus"], n_seq=tuple(obj["n_seq"]), form_pass=obj["form_pass"],
                         w1_only=obj["w1_only"], checks=dict(obj["checks"]))


def load_schema():
    return json.loads(SCHEMA_PATH.read_text())


def validate_record(obj, schema=None):
    jsonschema.validate(instance=obj, schema=schema or load_schema())


def write_catalog(records, fp):
    """
    Write records as JSONL to an open text stream and return how many were
    written. Keys are sorted and separators compact so identical inputs give
    byte-identical files.
    """
    count = 0
    with jsonlines.Writer(fp, compact=True, sort_keys=True, flush=True) as writer:
        for record in records:
            writer.write(record_to_json(record))
            count += 1
    return count


def read_catalog(path):
    with jsonlines.open(path) as reader:
        for obj in reader:
            yield record_from_json(obj)
