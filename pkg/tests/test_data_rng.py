import numpy as np
import pytest

import qexpfit as qf


class TestSample:
    def test_basic_construction(self):
        s = qf.Sample([1.0, 2.0, 3.0])
        assert s.n == 3
        assert s.x0 == 0.0
        assert not s.censored
        assert not s.values.flags.writeable

    def test_zero_values_are_legal(self):
        s = qf.Sample([0.0, 1.0])
        assert s.values.min() == 0.0

    def test_rejects_negative_values(self):
        with pytest.raises(qf.DataError):
            qf.Sample([1.0, -0.5])

    def test_rejects_values_below_threshold(self):
        with pytest.raises(qf.DataError):
            qf.Sample([49.9, 60.0], x0=50.0)

    def test_rejects_empty_and_nonfinite(self):
        with pytest.raises(qf.DataError):
            qf.Sample([])
        with pytest.raises(qf.DataError):
            qf.Sample([np.nan, 1.0])
        with pytest.raises(qf.DataError):
            qf.Sample([np.inf])

    def test_rejects_bad_threshold(self):
        with pytest.raises(qf.DataError):
            qf.Sample([1.0], x0=-1.0)
        with pytest.raises(qf.DataError):
            qf.Sample([1.0], x0=np.inf)


class TestRngStream:
    def test_same_identity_same_draws(self):
        a = qf.RngStream(123, 5).generator().random(100)
        b = qf.RngStream(123, 5).generator().random(100)
        assert np.array_equal(a, b)

    def test_int_index_normalizes(self):
        assert qf.RngStream(1, 4) == qf.RngStream(1, (4,))

    def test_children_are_distinct_and_stable(self):
        root = qf.RngStream(9)
        a = root.child(0).generator().random(50)
        b = root.child(1).generator().random(50)
        assert not np.array_equal(a, b)
        assert np.array_equal(a, root.child(0).generator().random(50))

    def test_validation(self):
        with pytest.raises(qf.DomainError):
            qf.RngStream(-1)
        with pytest.raises(qf.DomainError):
            qf.RngStream(2**64)
        with pytest.raises(qf.DomainError):
            qf.RngStream(0, (-1,))
