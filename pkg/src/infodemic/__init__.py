"""Content-feature fake news detection: features, classifiers, cross-validated evaluation."""

__version__ = "0.1.0"
