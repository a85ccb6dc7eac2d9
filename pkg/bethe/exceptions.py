"""
bethe-specific exceptions.

Every failure exits with status 1. The only other non-zero status is 2,
reserved for a valid computation whose spectral parameter is singular
(no W-invariant eigenstate exists, see PauliExcludedException).
"""

from __future__ import absolute_import

import sys
import warnings

from click import BadParameter, ClickException


class BetheException(ClickException):
    exit_code = 1
    default_msg = "bethe failed."

    def __init__(self, msg=None):
        super(BetheException, self).__init__(msg or self.default_msg)


class InvalidRootSystemException(BetheException):
    # Should be initialised with more specific message
    default_msg = "Invalid root system type or rank."


class WeylGroupTooLargeException(BetheException):
    default_msg = ("Weyl group order exceeds the enumeration cap. Raise "
                   "max_weyl_order or pick a smaller root system.")


class InvalidMultiplicityException(BetheException):
    default_msg = "Multiplicities must be finite and strictly positive."


class InvalidWeightException(BetheException):
    default_msg = ("Weights must be given as integer coefficients in the "
                   "fundamental-weight basis.")


class FoldingException(BetheException):
    default_msg = ("Folding into the fundamental alcove did not terminate. "
                   "The input point is probably not finite.")


class WallPointException(BetheException):
    default_msg = "Point lies too close to an affine root hyperplane."


class SingularSpectralParameterException(BetheException):
    default_msg = "Spectral parameter is singular."


class ConvergenceException(BetheException):
    default_msg = ("Newton iteration did not reach the requested gradient "
                   "tolerance. Try a looser --tol or a larger --max-iter.")


class ConfigParseException(BetheException):
    default_msg = "Unable to parse job configuration."


class BadConfigException(BetheException):
    # Should be initialised with more specific message
    default_msg = "Please check your job configuration."


class VerificationFailedException(BetheException):
    default_msg = "Some verification checks failed, see the report."


class PauliExcludedException(BetheException):
    exit_code = 2
    default_msg = ("singular BAE solution: by the Pauli principle there is "
                   "no W-invariant eigenstate for this weight.")


class BadParameterException(BadParameter):
    exit_code = 1


class BetheWarning(Warning):
    """Base class for custom warnings."""


class IndeterminateRegularityWarning(BetheWarning):
    """Smallest coroot pairing fell inside the band where regularity can
    not be decided numerically.
    """


def print_warning(msg, category=BetheWarning):
    """Helper to use Python warnings with custom formatter."""

    def custom_showwarning(message, *args, **kwargs):
        # ignore everything except the message
        try:
            sys.stderr.write("WARNING: " + str(message) + '\n')
        # stderr is invalid - this warning just gets lost
        except (IOError, UnicodeError):
            pass

    old_showwarning = warnings.showwarning
    try:
        warnings.showwarning = custom_showwarning
        warnings.warn(msg, category=category)
    finally:
        warnings.showwarning = old_showwarning
