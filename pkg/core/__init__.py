# Exact affine Weyl group and Iwahori-Hecke algebra arithmetic