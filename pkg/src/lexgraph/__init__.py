"""Desk-scale federated legal-document system: ingestion, reference
extraction, full-text search and an explorable two-level citation network
over EU and Hungarian legal corpora."""

__version__ = "0.1.0"
