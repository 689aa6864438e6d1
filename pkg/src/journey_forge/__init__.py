"""journey-forge: reward-pruned reasoning trees and the long thoughts derived from them."""

__version__ = "0.1.0"
