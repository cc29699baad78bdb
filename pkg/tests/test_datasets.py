"""Fixture loading and the data-directory override."""

import numpy as np
import pytest

from blockfactor.datasets import data_dir, karate, load_dataset, polblogs
from blockfactor.errors import MissingFixtureError
from blockfactor.graphs import degrees, is_connected


class TestKarate:
    def test_counts(self):
        g, labels = karate()
        assert g.n == 34
        assert g.num_edges == 78
        assert labels.shape == (34,)
        assert set(labels.tolist()) == {0, 1}

    def test_connected(self):
        g, _ = karate()
        assert is_connected(g)
        assert degrees(g).min() >= 1


class TestDataDirOverride:
    def test_env_override(self, monkeypatch, tmp_path):
        monkeypatch.setenv("BLOCKFACTOR_DATA_DIR", str(tmp_path))
        assert data_dir() == tmp_path
        # karate falls back to the packaged copy
        g, _ = karate()
        assert g.n == 34

    def test_missing_fixture_message_names_fetch_script(self, monkeypatch, tmp_path):
        monkeypatch.setenv("BLOCKFACTOR_DATA_DIR", str(tmp_path))
        with pytest.raises(MissingFixtureError, match="fetch_polblogs"):
            polblogs()

    def test_polblogs_pipeline_on_synthetic_fixture(self, monkeypatch, tmp_path):
        # exercise the symmetrize + LCC + label restriction path with a
        # small stand-in file pair
        monkeypatch.setenv("BLOCKFACTOR_DATA_DIR", str(tmp_path))
        (tmp_path / "polblogs_edges.txt").write_text(
            "0 1\n1 0\n1 2\n3 3\n4 5\n"
        )
        (tmp_path / "polblogs_labels.txt").write_text("0\n0\n1\n1\n0\n1\n")
        g, truth = polblogs()
        assert g.n == 3  # LCC of {0,1,2}; self loop dropped; (4,5) smaller
        assert truth.tolist() == [0, 0, 1]

    def test_load_dataset_dispatch(self):
        g, labels = load_dataset("karate")
        assert g.n == labels.shape[0]
        with pytest.raises(ValueError):
            load_dataset("airports")
