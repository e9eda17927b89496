from typing import Union

from arithmetic.modulus import Modulus
from utils.errors import ModulusError


def jacobi(x: int, n: Union[int, Modulus]) -> int:
    """Jacobi symbol (x/n) for odd n by binary reciprocity; 0 iff gcd(x, n) > 1"""
    m = n.n if isinstance(n, Modulus) else n
    if m <= 0 or m % 2 == 0:
        raise ModulusError("jacobi symbol needs an odd positive modulus")
    a = x % m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0
