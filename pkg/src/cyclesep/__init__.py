"""Cycle separation structure on planar embeddings."""
