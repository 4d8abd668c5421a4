"""dyncluster - communication-efficient clustering of distributed dynamic graphs."""

__version__ = "1.0.0"
