from typing import NamedTuple

import pytest

from bvalue.cli.main import main


class CliRun(NamedTuple):
    code: int
    out: str
    err: str


@pytest.fixture
def run_cli(capsys):
    def runner(*argv: str) -> CliRun:
        code = main(list(argv))
        captured = capsys.readouterr()
        return CliRun(code, captured.out, captured.err)

    return runner


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / 'null.scenario'
    path.write_text(
            'n1 = 10\n'
            'n2 = 10\n'
            'reps = 4000\n'
            'seed = 20190603\n'
            'label = null\n',
    )
    return path


@pytest.fixture
def dataset_file(tmp_path):
    path = tmp_path / 'doses.csv'
    path.write_text(
            'group,value\n'
            'low,1.0\n'
            'low,1.4\n'
            'low,0.8\n'
            'high,2.1\n'
            'high,1.9\n'
            'high,2.6\n',
    )
    return path
