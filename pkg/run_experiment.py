import argparse
import glob
import json
import logging
import os
import tempfile

import sacred
from sacred.observers import FileStorageObserver

from catalog import SearchSummary, scan_w1, search
from configs import fetch_run_params
from export import write_catalog
from utils import strict_int


def parse_args(argv=None):
    parser = argparse.ArgumentParser()
    parser.add_argument('--config', type=str, required=True)  # run config name under configs/, or a .json path
    parser.add_argument('--experiment_name', type=str, required=True)  # name of the sacred experiment
    parser.add_argument('--runs_dir', type=str, default='runs')  # FileStorageObserver root
    parser.add_argument('--scan', action='store_true')  # run the W(1) scan instead of a catalog sweep
    parser.add_argument('--processes', type=strict_int, default=None)  # 0 -> cpu count
    return parser.parse_args(argv)


def sweep(_run, params):
    """Catalog sweep: the JSONL file is attached as an artifact, the summary counts as scalars."""
    summary = SearchSummary()

    def tracked(records):
        for record in records:
            summary.add(record)
            yield record

    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, f"catalog_{params['config_name']}.jsonl")
        with open(out, 'w', encoding='utf-8') as fp:
            write_catalog(tracked(search(params['p_max'], filter=params['filter'], oracle_limit=params['oracle_limit'],
                                         processes=params['processes'], chunksize=params['chunksize'],
                                         checks=params['checks'])), fp)
        _run.add_artifact(out)

    result = summary.to_dict()
    _run.log_scalar('emitted', result['emitted'])
    _run.log_scalar('saito_pass', result['saito_pass'])
    _run.log_scalar('failed_checks', sum(len(v) for v in result['failed_checks'].values()))
    _run.log_scalar('saito_without_form', len(result['saito_without_form']))
    _run.log_scalar('missing_delta', len(result['missing_delta']))
    return result


def scan(_run, params):
    report = scan_w1(params['p_max'], processes=params['processes'])
    _run.log_scalar('scanned', report.scanned)
    _run.log_scalar('violations', report.violations)
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, 'scan_w1.json')
        with open(out, 'w', encoding='utf-8') as fp:
            json.dump(report.to_dict(), fp, indent=2, sort_keys=True)
        _run.add_artifact(out)
    return report.to_dict()


def build_experiment(args):
    params = fetch_run_params(args.config)
    if args.processes is not None:
        params['processes'] = args.processes

    ex = sacred.Experiment(args.experiment_name, interactive=True, save_git_info=False)
    ex.observers.append(FileStorageObserver(args.runs_dir))
    ex.add_config({'scan': args.scan, **params})

    @ex.main
    def main(_run):
        logging.info(f"Starting run {_run._id} from config {params['config_name']}")
        return scan(_run, params) if args.scan else sweep(_run, params)

    return ex


if __name__ == '__main__':
    logging.basicConfig(level=logging.INFO)
    args = parse_args()
    ex = build_experiment(args)
    for file in glob.glob("**/*.py", recursive=True):
        if not file.startswith('examples'):
            ex.add_source_file(file)
    ex.run()
