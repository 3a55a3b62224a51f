"""ghcs auditors - Bloch residuals, identity audits, quadrature and resolution-of-unity checks."""
