# Excel library methods
# Excel manager class (used by the bench report)
# utility classes for common formatting of result tabs
#

import logging

from openpyxl import Workbook
from openpyxl.styles import Alignment, Font, Border, Side, PatternFill

logger = logging.getLogger(__name__)


class CellFormatTitle(object):
    # Styling for the title row of the parameters tab
    font = Font(bold=True, size=16)
    fill = PatternFill()
    alignment = Alignment(horizontal="left", vertical="center")
    border = Border(
        left=Side(), right=Side(),
        top=Side(), bottom=Side(style="thick")
    )


class CellFormatHeader(object):
    # Styling for table headers
    font = Font(bold=True, color="FFFFFF")
    fill = PatternFill(start_color="4F81BD", end_color="4F81BD", fill_type="solid")
    alignment = Alignment(horizontal="center", vertical="center")
    border = Border(
        left=Side(style="thin"), right=Side(style="thin"),
        top=Side(style="thin"), bottom=Side(style="thin")
    )


class CellFormatBody(object):
    # Styling for table body; numbers right-aligned so weights line up
    font = Font()
    fill = PatternFill()
    alignment = Alignment(horizontal="right", vertical="center")
    border = Border(
        left=Side(style="thin"), right=Side(style="thin"),
        top=Side(style="thin"), bottom=Side(style="thin")
    )


def _apply_format(cell, cell_format):
    cell.font = cell_format.font
    cell.fill = cell_format.fill
    cell.alignment = cell_format.alignment
    cell.border = cell_format.border


class ExcelManager:
    def __init__(self):
        self.workbook = None
        self.file_path = None

    # ###############################################################
    # Workbook management methods
    #

    def create_spreadsheet(self, file_path):
        """
        Creates a new Excel workbook without the default sheet.
        """
        self.workbook = Workbook()
        self.file_path = file_path
        self.workbook.remove(self.workbook.active)
        logger.debug(f'created workbook {file_path}')

    def save(self):
        if not self.workbook:
            raise RuntimeError("No active workbook to save.")
        self.workbook.save(self.file_path)

    def close(self):
        if not self.workbook:
            raise RuntimeError("No active workbook to close.")
        self.workbook.close()
        self.workbook = None

    def save_and_close(self):
        self.save()
        self.close()
        logger.info(f'saved workbook {self.file_path}')

    # ###############################################################
    # Tabs
    #

    def add_title_tab(self, tab_name, title, params):
        """Title cell followed by one "key | value" row per run parameter"""
        if not self.workbook:
            raise RuntimeError("No active workbook. Create a spreadsheet first.")
        sheet = self.workbook.create_sheet(title=tab_name)
        _apply_format(sheet.cell(row=1, column=1, value=title), CellFormatTitle())
        for row_idx, (key, value) in enumerate(params.items(), start=3):
            sheet.cell(row=row_idx, column=1, value=str(key))
            sheet.cell(row=row_idx, column=2, value=str(value))
        sheet.column_dimensions['A'].width = max([len(str(k)) for k in params] + [10]) + 2
        sheet.column_dimensions['B'].width = max([len(str(v)) for v in params.values()] + [10]) + 2

    def add_tab_with_formatted_data(self, tab_name, data_dict,
                                    header_format=CellFormatHeader(),
                                    body_format=CellFormatBody()):
        """Add a new tab as a simple formatted table.

        :param tab_name:    new tab name
        :param data_dict:   column header -> list of column values, all lists of equal length
        """
        if not self.workbook:
            raise RuntimeError("No active workbook. Create a spreadsheet first.")
        if tab_name in self.workbook.sheetnames:
            raise RuntimeError(f'Tab "{tab_name}" already exists.')
        sheet = self.workbook.create_sheet(title=tab_name)

        for col_num, header in enumerate(data_dict.keys(), start=1):
            _apply_format(sheet.cell(row=1, column=col_num, value=header), header_format)

        for row_idx, row in enumerate(zip(*data_dict.values()), start=2):
            for col_idx, value in enumerate(row, start=1):
                _apply_format(sheet.cell(row=row_idx, column=col_idx, value=value), body_format)

        # auto-adjust column widths
        for col_num, col_cells in enumerate(sheet.columns, start=1):
            max_length = max(len(str(cell.value or "")) for cell in col_cells)
            sheet.column_dimensions[sheet.cell(row=1, column=col_num).column_letter].width = max_length + 2

        logger.debug(f"added tab '{tab_name}' with {sheet.max_row - 1} rows")
