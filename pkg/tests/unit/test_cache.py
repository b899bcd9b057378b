"""
Unit tests для GrowingTable.

Тестируются:
- Ленивое построение строк и геометрический рост ёмкости
- rows/clear/__contains__
"""

import pytest

from utils.cache import GrowingTable


class TestGrowingTable:
    """Тесты для GrowingTable"""

    @pytest.fixture
    def calls(self):
        return []

    @pytest.fixture
    def squares(self, calls):
        def build_row(n, rows):
            calls.append(n)
            return n * n

        return GrowingTable("squares", build_row, initial_capacity=4)

    def test_lazy_build(self, squares, calls):
        assert len(squares) == 0
        assert squares.get(2) == 4
        assert calls == [0, 1, 2, 3]
        assert 3 in squares
        assert 4 not in squares

    def test_capacity_doubles(self, squares):
        squares.get(0)
        squares.get(5)
        assert len(squares) == 8

    def test_rows_see_previous_rows(self):
        fibonacci = GrowingTable(
            "fibonacci", lambda n, rows: n if n < 2 else rows[n - 1] + rows[n - 2]
        )
        assert fibonacci.rows(8) == [0, 1, 1, 2, 3, 5, 8, 13]
        assert fibonacci.rows(0) == []

    def test_negative_index(self, squares):
        with pytest.raises(IndexError):
            squares.get(-1)

    def test_clear(self, squares, calls):
        squares.get(1)
        squares.clear()
        assert len(squares) == 0
        squares.get(0)
        assert calls.count(0) == 2
