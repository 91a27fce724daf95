"""Output formatter for command records."""
import csv
import io
import json
import math
from typing import Dict, List

TABLE_COLUMNS = ['n', 'j_alpha_plus_1', 'limit_m', 'chi_real', 'chi_int', 'previous_best', 'improves',
                 'published', 'matches_published']
SHIFTED_COLUMNS = ['n', 'bound_dimension', 'j_alpha_plus_1', 'limit_m', 'chi_real',
                   'chi_int_shifted', 'previous_best', 'improves', 'published', 'matches_published']


def _clean(value):
    """Make a value JSON-safe: NaN and infinities become None, tuples become lists."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {key: _clean(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(item) for item in value]
    if hasattr(value, 'tolist'):
        # numpy scalars and arrays
        return _clean(value.tolist())
    return value


def _cell(value) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else ''
    return str(value)


class OutputFormatter:
    """Format command records as JSON or CSV text."""

    def __init__(self, output_format: str = 'json'):
        """
        Initialize the formatter.

        Args:
            output_format: 'json' or 'csv'
        """
        if output_format not in ('json', 'csv'):
            raise ValueError(f"Unknown output format '{output_format}', expected json or csv")
        self.output_format = output_format

    def format_record(self, record: Dict) -> str:
        """Render a record in the configured format, ending with a newline."""
        if self.output_format == 'csv':
            return self.to_csv(record)
        return self.to_json(record)

    def to_json(self, record: Dict) -> str:
        """JSON with shortest round-trip floats."""
        return json.dumps(_clean(record), indent=2, ensure_ascii=False, allow_nan=False) + '\n'

    def to_csv(self, record: Dict) -> str:
        """
        CSV of the record's rows.

        Table records use the fixed column order; other records emit their
        'rows' list if present, otherwise a single row of scalar results.
        """
        results = record.get('results', {})
        rows = self._rows(record)
        if record.get('command') == 'table':
            columns = SHIFTED_COLUMNS if results.get('annotate_shift') else TABLE_COLUMNS
        else:
            columns = []
            for row in rows:
                for key in row:
                    if key not in columns:
                        columns.append(key)

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns])
        return buffer.getvalue()

    def _rows(self, record: Dict) -> List[Dict]:
        results = record.get('results', {})
        if isinstance(results.get('rows'), list):
            return [_clean(row) for row in results['rows']]
        scalars = {key: value for key, value in _clean(results).items()
                   if not isinstance(value, (dict, list))}
        return [scalars]
