"""Unit tests for artifact storage on local paths and S3."""

import json

import boto3
import pytest
from moto import mock_aws

from holebound.config import load_config
from holebound.storage import (
    StorageError,
    dumps_json,
    join_location,
    read_json,
    read_text,
    split_s3_uri,
    write_json,
    write_text,
)
from holebound.sweep import SweepResult, write_sweep

BUCKET = "test-bucket"


@pytest.fixture
def s3_client():
    with mock_aws():
        client = boto3.client("s3", region_name="us-east-1")
        client.create_bucket(Bucket=BUCKET)
        yield client


class TestLocations:
    def test_split(self):
        assert split_s3_uri(f"s3://{BUCKET}/runs/a.json") == (BUCKET, "runs/a.json")
        assert split_s3_uri("runs/a.json") is None

    @pytest.mark.parametrize("uri", ["s3://", "s3://bucket", "s3://bucket/"])
    def test_malformed(self, uri):
        with pytest.raises(StorageError):
            split_s3_uri(uri)

    def test_join(self):
        assert join_location(f"s3://{BUCKET}/out/", "records.jsonl") == f"s3://{BUCKET}/out/records.jsonl"

    def test_canonical_json(self):
        assert dumps_json({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'


class TestLocalFiles:
    def test_creates_parent_directories(self, tmp_path):
        target = tmp_path / "nested" / "deep" / "result.json"
        write_json(str(target), {"chi": 3})
        assert read_json(str(target)) == {"chi": 3}

    def test_missing_is_none(self, tmp_path):
        assert read_text(str(tmp_path / "absent.txt")) is None
        assert read_json(str(tmp_path / "absent.json")) is None


class TestS3:
    def test_write_then_read(self, s3_client):
        location = f"s3://{BUCKET}/results/omega.json"
        write_json(location, {"size": 4}, s3_client=s3_client)
        obj = s3_client.get_object(Bucket=BUCKET, Key="results/omega.json")
        assert obj["ContentType"] == "application/json"
        assert json.loads(obj["Body"].read()) == {"size": 4}
        assert read_json(location, s3_client=s3_client) == {"size": 4}

    def test_missing_key_is_none(self, s3_client):
        assert read_text(f"s3://{BUCKET}/nothing.json", s3_client=s3_client) is None

    def test_config_from_s3(self, s3_client):
        body = 'ks = [1]\nells = [4]\n[[generators]]\nmodel = "gnp"\nn_min = 3\nn_max = 3\np = 0.2\n'
        write_text(f"s3://{BUCKET}/cfg/sweep.toml", body, content_type="text/plain", s3_client=s3_client)
        config = load_config(f"s3://{BUCKET}/cfg/sweep.toml", s3_client=s3_client)
        assert config.generators[0].p == 0.2

    def test_sweep_outputs(self, s3_client):
        records_at, summary_at = write_sweep(SweepResult([], []), f"s3://{BUCKET}/sweep", s3_client=s3_client)
        assert records_at == f"s3://{BUCKET}/sweep/records.jsonl"
        summary = s3_client.get_object(Bucket=BUCKET, Key="sweep/summary.csv")
        assert summary["ContentType"] == "text/csv"
        assert summary["Body"].read().decode() == "k,ell,graphs,max_chi,main_bound\n"
        assert read_text(records_at, s3_client=s3_client) == ""
