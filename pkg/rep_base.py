# base module for result reports
# Template base for report jobs; uses the "Command Design Pattern"
#
# run() drives _collect_data -> _parse_data -> _format_data, each step storing its output
# on the instance and its result in self.status.  Writers read self.data_formatted.
#

import logging

logger = logging.getLogger(__name__)


class ReportTemplate(object):
    def __init__(self, records, metadata=None, excel=None, **kwargs):
        """
        :param records:     raw input of the report (sub-class specific)
        :param metadata:    dict with 'tab_name' and 'title'
        :param excel:       optional ExcelManager with an open workbook
        """
        metadata = metadata or {}
        self.records = records
        self.metadata = metadata
        self.excel_manager = excel

        self.tab_name = metadata.get('tab_name', 'MISSING_TAB')
        self.title = metadata.get('title', 'MISSING_TITLE')

        # running data objects
        self.data_collected = None          # raw data as taken from self.records
        self.data_parsed = None             # grouped/validated data
        self.data_formatted = None          # final rows before writing to output

        self.status = {'init': 'success',
                       'data_collect': None,
                       'data_parse': None,
                       'data_format': None,
                       'print': None,
                       }

    def run(self):
        """Collect, parse and format; returns the status of the last step"""
        self._collect_data()
        self._parse_data()
        status = self._format_data()
        logger.debug(f'{self.__class__.__name__} status: {self.status}')
        return status

    def write_excel_tab(self):
        """Write self.data_formatted to the workbook; sub-classes know their tab layout"""
        raise NotImplementedError

    # Private Routines

    def _collect_data(self):
        self.data_collected = self.records
        self.status['data_collect'] = {'result': 'success'}
        return 'success'

    def _parse_data(self):
        self.data_parsed = self.data_collected
        self.status['data_parse'] = {'result': 'success'}
        return 'success'

    def _format_data(self):
        self.data_formatted = self.data_parsed
        self.status['data_format'] = {'result': 'success'}
        return 'success'
