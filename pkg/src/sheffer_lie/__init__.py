"""Exact truncated Sheffer, umbral and Riordan group machinery."""
