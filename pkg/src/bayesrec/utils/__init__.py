from .csv_handler import CsvHandler

__all__ = ["CsvHandler"]
