"""Document I/O, example generators, mutation operators and the command-line driver."""
from .io import Document, DocumentError, from_document, load, parse, save, to_document

__all__ = ["Document", "DocumentError", "from_document", "load", "parse", "save", "to_document"]
