import concurrent.futures
from dataclasses import fields, is_dataclass
from typing import Callable, Iterable, TypeVar

import numpy as np

from ._config import thread_count

_T = TypeVar("_T")
_R = TypeVar("_R")


def encode_complex(value: complex) -> list[float]:
    """Complex number as an ``[re, im]`` pair."""
    value = complex(value)
    return [float(value.real), float(value.imag)]


def decode_complex(pair) -> complex:
    """Inverse of ``encode_complex``; plain real numbers are accepted too."""
    if isinstance(pair, (int, float)):
        return complex(pair)
    if len(pair) != 2:
        raise ValueError(f"Complex numbers are [re, im] pairs, got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def expect_object(data, what: str) -> dict:
    """JSON objects only; lists and scalars where an object belongs are input errors."""
    if not isinstance(data, dict):
        raise ValueError(f"Expected a JSON object for {what}, got {type(data).__name__}")
    return data


def decode_complex_array(data) -> np.ndarray:
    """Nested lists of ``[re, im]`` pairs to a complex array."""
    _array = np.asarray(data, dtype=float)
    if _array.ndim == 0 or _array.shape[-1] != 2:
        raise ValueError("Expected nested [re, im] pairs")
    return _array[..., 0] + 1j * _array[..., 1]


def encode_value(value):
    """Recursively turn reports, arrays and complex numbers into JSON-ready data."""
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if is_dataclass(value) and not isinstance(value, type):
        return {_f.name: encode_value(getattr(value, _f.name)) for _f in fields(value)}
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return np.stack([value.real, value.imag], axis=-1).tolist()
        return value.tolist()
    if isinstance(value, (complex, np.complexfloating)):
        return encode_complex(value)
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [encode_value(_v) for _v in value]
    if isinstance(value, dict):
        return {str(_k): encode_value(_v) for _k, _v in value.items()}
    return value


def is_power_of_two(n: int) -> bool:
    return n >= 1 and not n & (n - 1)


def grid_angles(n: int) -> np.ndarray:
    """Angles 2*pi*j/N of the N-th roots of unity."""
    return 2.0 * np.pi * np.arange(n) / n


def grid_points(n: int) -> np.ndarray:
    return np.exp(1j * grid_angles(n))


def ordered_map(func: Callable[[_T], _R], items: Iterable[_T]) -> list[_R]:
    """Map over items in a thread pool, returning results in input order."""
    items = list(items)
    _workers = min(thread_count(), max(1, len(items)))
    if _workers == 1:
        return [func(_item) for _item in items]

    with concurrent.futures.ThreadPoolExecutor(max_workers=_workers) as executor:
        futures_with_index = [
            (i, executor.submit(func, _item)) for i, _item in enumerate(items)
        ]
        return [
            future.result()
            for _, future in sorted(futures_with_index, key=lambda x: x[0])
        ]


def decode_array(data, ndim: int) -> np.ndarray:
    """Complex array of rank ``ndim`` from plain reals or nested ``[re, im]`` pairs."""
    _array = np.asarray(data, dtype=float)
    if _array.ndim == ndim:
        return _array.astype(complex)
    if _array.ndim == ndim + 1:
        return decode_complex_array(data)
    raise ValueError(f"Expected an array of rank {ndim}, got shape {_array.shape}")
