# Representations, quotient complexes, trees and explicit bounds