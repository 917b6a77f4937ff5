from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from darekit import (
    CorpusSource,
    MatcherBundle,
    build_matchers,
    bundled_manifest_path,
    default_config,
    load_manifest,
    run_pipeline,
)
from fixture_corpus import build_fixture, write_fixture_jsonl


@pytest.fixture(scope="session")
def bundled_lexicons():
    return load_manifest(bundled_manifest_path())


@pytest.fixture(scope="session")
def matchers(bundled_lexicons) -> MatcherBundle:
    return build_matchers(bundled_lexicons)


@pytest.fixture(scope="session")
def fixture_truth():
    return build_fixture()


@pytest.fixture(scope="session")
def fixture_corpus_path(fixture_truth, tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "fixture.jsonl"
    return write_fixture_jsonl(path, fixture_truth)


@pytest.fixture(scope="session")
def fixture_run(fixture_corpus_path, tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("fixture-run")
    return run_pipeline(
        CorpusSource.from_path(fixture_corpus_path), default_config(), out_dir
    )
