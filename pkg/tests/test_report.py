import json
from fractions import Fraction

import numpy as np
import pandas as pd

from report import (
    VerificationReport, close_all, jsonable, plot_census, plot_check_summary, print_report,
    report_path, save_report,
)


def make_report():
    report = VerificationReport('counts', settings={'seed': 1, 'primes': [2147483647, 2147483629]})
    report.add('β3(I)', 175, 175)
    report.add('Catanese 张成维数', 20, 20)
    report.add('对照', 3, 4, detail='故意不一致')
    report.add('布尔检查', True, True)
    report.extras['census'] = {3: 58}
    return report


def test_report_pass_and_failures():
    report = make_report()
    assert not report.passed
    assert [c.name for c in report.failures()] == ['对照']
    assert report.add('显式通过', 1, 2, passed=True).passed
    assert VerificationReport('empty').passed


def test_jsonable():
    assert jsonable(Fraction(1, 2)) == '1/2'
    assert jsonable(Fraction(4, 2)) == 2
    assert jsonable({3: (Fraction(1, 3), np.int64(5))}) == {'3': ['1/3', 5]}


def test_report_dict_and_frame():
    report = make_report()
    data = report.to_dict()
    assert data['passed'] is False
    assert data['extras'] == {'census': {'3': 58}}
    assert json.dumps(data)
    frame = report.to_frame()
    assert isinstance(frame, pd.DataFrame)
    assert list(frame['结果']) == ['PASS', 'PASS', 'FAIL', 'PASS']


def test_print_report(capsys):
    print_report(make_report())
    out = capsys.readouterr().out
    assert '[PASS] β3(I)' in out
    assert '[FAIL] 对照  (故意不一致)' in out
    assert '1 项未通过' in out


def test_save_report(tmp_path):
    path = save_report(make_report(), tmp_path)
    assert path == report_path(tmp_path, 'counts')
    assert path.name == 'counts_report.json'
    assert json.loads(path.read_text(encoding='utf-8'))['target'] == 'counts'
    assert path.with_suffix('.csv').exists()


def test_plots(tmp_path):
    fig = plot_check_summary(make_report(), str(tmp_path / 'summary.png'))
    assert fig is not None
    assert (tmp_path / 'summary.png').exists()
    assert plot_check_summary(VerificationReport('empty')) is None
    fig = plot_census({'01': {3: 58, 4: 340}, '02': {'3': 10, '5': 2}}, str(tmp_path / 'census.png'))
    assert fig is not None
    assert (tmp_path / 'census.png').exists()
    assert plot_census({}) is None
    close_all()
