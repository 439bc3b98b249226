"""Constraint equations on unknown W-coefficients and their solutions."""
