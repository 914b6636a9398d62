import pytest
from hypothesis import given, settings, strategies as st

from entspec import partitions
from entspec.errors import ResourceLimitError

# ---------------------------------------------------------------------------
# brute-force oracles (feasible to n ~ 40)


def count_subset_sums(n: int, parts: list[int]) -> int:
    """Number of subsets of ``parts`` summing to ``n`` (each part at most
    once), by direct recursion."""

    def rec(i: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        if i == len(parts) or remaining < 0:
            return 0
        return rec(i + 1, remaining) + rec(i + 1, remaining - parts[i])

    return rec(0, n)


def count_multiset_sums(n: int, parts: list[int]) -> int:
    """Number of multisets of ``parts`` summing to ``n`` (unlimited
    repetition)."""

    def rec(i: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        if i == len(parts) or remaining < 0:
            return 0
        return rec(i + 1, remaining) + rec(i, remaining - parts[i])

    return rec(0, n)


def brute_distinct_odd(n: int) -> int:
    return count_subset_sums(n, list(range(1, n + 1, 2)))


def brute_distinct(n: int) -> int:
    return count_subset_sums(n, list(range(1, n + 1)))


def brute_odd(n: int) -> int:
    return count_multiset_sums(n, list(range(1, n + 1, 2)))


# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def table3000():
    return partitions.build_tables(3000)


class TestBuildTables:
    def test_against_enumeration(self):
        table = partitions.build_tables(30)
        for n in range(31):
            assert table.p_distinct_odd[n] == brute_distinct_odd(n)
            assert table.p_distinct[n] == brute_distinct(n)
            assert table.p_odd[n] == brute_odd(n)

    def test_convolutions_against_enumeration(self):
        table = partitions.build_tables(30)
        pdo = [brute_distinct_odd(n) for n in range(31)]
        pd = [brute_distinct(n) for n in range(31)]
        for n in range(31):
            assert table.a[n] == sum(pdo[l] * pdo[n - l] for l in range(n + 1))
            assert table.b[n] == sum(pd[l] * pd[n - l] for l in range(n + 1))

    def test_small_values(self):
        table = partitions.build_tables(8)
        assert table.p_distinct_odd == [1, 1, 0, 1, 1, 1, 1, 1, 2]
        assert table.p_distinct[:7] == [1, 1, 1, 2, 2, 3, 4]
        assert table.a[:5] == [1, 2, 1, 2, 4]
        assert table.b[:4] == [1, 2, 3, 6]

    def test_zeroth_entries(self):
        table = partitions.build_tables(0)
        assert (
            table.p_distinct_odd[0]
            == table.p_distinct[0]
            == table.p_odd[0]
            == table.a[0]
            == table.b[0]
            == 1
        )

    def test_euler_identity(self, table3000):
        assert table3000.p_distinct == table3000.p_odd

    def test_entries_nonnegative_and_monotone(self, table3000):
        table = table3000
        assert all(v >= 0 for v in table.a) and all(v >= 0 for v in table.b)
        assert all(
            table.a[n + 1] >= table.a[n] for n in range(2, table.n_max)
        )
        assert all(
            table.b[n + 1] >= table.b[n] for n in range(2, table.n_max)
        )

    def test_exceeds_64_bit(self, table3000):
        # exactness is the point: entries must keep growing past 2^63
        assert table3000.a[1200] > 2**63

    def test_validation(self):
        with pytest.raises(ValueError):
            partitions.build_tables(-1)
        with pytest.raises(ResourceLimitError):
            partitions.build_tables(100, cap=50)


class TestSelfConvolve:
    @given(st.lists(st.integers(min_value=0, max_value=10**12), min_size=1, max_size=40))
    @settings(max_examples=80, deadline=None)
    def test_matches_direct_convolution(self, seq):
        got = partitions.self_convolve(seq)
        want = [
            sum(seq[l] * seq[n - l] for l in range(n + 1)) for n in range(len(seq))
        ]
        assert got == want


class TestSeriesCoefficientsCheck:
    def test_small(self):
        assert partitions.series_coefficients_check(0) is True
        assert partitions.series_coefficients_check(50) is True

    def test_moderate(self):
        assert partitions.series_coefficients_check(200) is True

    def test_detects_corruption(self):
        table = partitions.build_tables(50)
        broken = partitions.PartitionTable(
            n_max=table.n_max,
            p_distinct_odd=table.p_distinct_odd[:17] + [table.p_distinct_odd[17] + 1]
            + table.p_distinct_odd[18:],
            p_distinct=table.p_distinct,
            p_odd=table.p_odd,
            a=table.a,
            b=table.b,
        )
        assert partitions.series_coefficients_check(50, broken) is False

    def test_cap(self):
        with pytest.raises(ValueError):
            partitions.series_coefficients_check(4001)
