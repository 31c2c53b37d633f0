# Benchmark report
# CSV (versioned schema) and Excel tabs for a list of RunRecords
#
# CSV layout
#   # mwc-bench-csv v1
#   instance,seed,mode,best_weight,time_to_best_ms,steps,restarts,restart_period_avg
#   <one row per run, (instance, seed, mode) order>
#   # summary
#   instance,mode,runs,w_max,w_avg,restart_period_avg
#   <one row per (instance, mode) with at least one successful run>
#
# Failed runs keep their row with best_weight = ERROR and the other fields empty; the
# message follows on a "# error" comment line.
#

import csv
import logging

import numpy as np

from engine.mwc_config import ClickConfig
from rep_base import ReportTemplate

logger = logging.getLogger(__name__)

RUN_COLUMNS = ['instance', 'seed', 'mode', 'best_weight', 'time_to_best_ms', 'steps', 'restarts',
               'restart_period_avg']
SUMMARY_COLUMNS = ['instance', 'mode', 'runs', 'w_max', 'w_avg', 'restart_period_avg']
ERROR_VALUE = 'ERROR'


def _fmt_float(value, digits):
    return f'{value:.{digits}f}'


class BenchReport(ReportTemplate):
    def __init__(self, records, metadata=None, excel=None, timing=True, **kwargs):
        """
        :param records: RunRecords, already sorted
        :param timing:  False writes time_to_best_ms as 0 (byte-identical reruns)
        """
        metadata = metadata or {'tab_name': 'RUNS', 'title': 'Benchmark runs'}
        super().__init__(records, metadata=metadata, excel=excel, **kwargs)
        self.timing = timing
        self.summary = []
        self.errors = []

    @property
    def failed(self):
        return len(self.errors)

    def _parse_data(self):
        """Group successful runs by (instance, mode) and compute w_max / w_avg / mean period"""
        records = list(self.data_collected)
        groups = {}
        for record in records:
            if not record.ok:
                self.errors.append(record)
                continue
            key = (record.instance, record.mode_rank, record.mode)
            groups.setdefault(key, []).append(record)

        summary = []
        for (instance, _, mode), group in sorted(groups.items()):
            weights = np.array([r.best_weight for r in group], dtype=np.int64)
            periods = np.array([r.restart_period_avg for r in group], dtype=np.float64)
            summary.append({'instance': instance,
                            'mode': mode,
                            'runs': len(group),
                            'w_max': int(weights.max()),
                            'w_avg': float(weights.mean()),
                            'restart_period_avg': float(periods.mean()),
                            })
        self.data_parsed = records
        self.summary = summary
        self.status['data_parse'] = {'result': 'success' if not self.errors else 'errors',
                                     'runs': len(records),
                                     'failed': len(self.errors),
                                     }
        return self.status['data_parse']['result']

    def _format_data(self):
        rows = []
        for r in self.data_parsed:
            if not r.ok:
                rows.append([r.instance, r.seed, r.mode, ERROR_VALUE, '', '', '', ''])
                continue
            time_ms = int(round(r.time_to_best * 1000)) if self.timing else 0
            rows.append([r.instance, r.seed, r.mode, r.best_weight, time_ms, r.steps, r.restarts,
                         _fmt_float(r.restart_period_avg, 1)])
        summary_rows = [[s['instance'], s['mode'], s['runs'], s['w_max'], _fmt_float(s['w_avg'], 3),
                         _fmt_float(s['restart_period_avg'], 1)] for s in self.summary]
        self.data_formatted = {'runs': rows, 'summary': summary_rows}
        self.status['data_format'] = {'result': 'success'}
        return 'success'

    # ###############################################################
    # Writers
    #

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        stream.write(ClickConfig.CSV_SCHEMA_LINE + '\n')
        writer.writerow(RUN_COLUMNS)
        errors = {(r.instance, r.seed, r.mode): r.error for r in self.errors}
        for row in self.data_formatted['runs']:
            writer.writerow(row)
            if row[3] == ERROR_VALUE:
                stream.write(f'# error {row[0]} seed={row[1]} mode={row[2]}: {errors[(row[0], row[1], row[2])]}\n')
        stream.write('# summary\n')
        writer.writerow(SUMMARY_COLUMNS)
        for row in self.data_formatted['summary']:
            writer.writerow(row)
        self.status['print'] = {'result': 'success', 'format': 'csv'}
        return 'success'

    def write_excel_tab(self):
        """RUNS and SUMMARY tabs; the workbook is saved by the caller"""
        excel = self.excel_manager
        if excel is None or not excel.workbook:
            raise RuntimeError("No active workbook. Create a spreadsheet first.")
        runs = self.data_formatted['runs']
        summary = self.data_formatted['summary']
        excel.add_tab_with_formatted_data(self.tab_name,
                                          {col: [row[i] for row in runs] for i, col in enumerate(RUN_COLUMNS)})
        excel.add_tab_with_formatted_data('SUMMARY',
                                          {col: [row[i] for row in summary] for i, col in enumerate(SUMMARY_COLUMNS)})
        self.status['print'] = {'result': 'success', 'format': 'xlsx'}
        return 'success'
