"""Shear-enhanced dissipation in decaying 2D turbulence: wavevector kinematics,
evolved spectra, vorticity PDFs and information-geometry diagnostics."""

from . import gauss_pdf, infogeo, kinematics, nongauss, numerics, scaling, shear3d, spectra

__all__ = ["gauss_pdf", "infogeo", "kinematics", "nongauss", "numerics", "scaling", "shear3d", "spectra"]
__version__ = "0.1.0"
