"""Artifact storage - writes and reads harness outputs on local paths or ``s3://bucket/key`` URIs."""

from __future__ import annotations

import json
import os
from typing import Any, Optional

import boto3
from botocore.config import Config
from botocore.exceptions import ClientError

_S3_CONFIG = Config(signature_version="s3v4")
_S3_PREFIX = "s3://"


class StorageError(OSError):
    """Raised when an artifact location is malformed."""


def _default_s3_client():
    return boto3.client("s3", config=_S3_CONFIG)


def dumps_json(data: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def split_s3_uri(location: str) -> Optional[tuple[str, str]]:
    """(bucket, key) for an ``s3://`` URI, None for a local path."""
    if not location.startswith(_S3_PREFIX):
        return None
    bucket, _, key = location[len(_S3_PREFIX):].partition("/")
    if not bucket or not key:
        raise StorageError(f"S3 location needs a bucket and a key: {location!r}")
    return bucket, key


def join_location(base: str, name: str) -> str:
    if base.startswith(_S3_PREFIX):
        return base.rstrip("/") + "/" + name
    return os.path.join(base, name)


def write_text(location: str, text: str, content_type: str = "application/json", s3_client=None) -> None:
    """Stores ``text`` at a local path (parent directories created) or as an S3 object."""
    target = split_s3_uri(location)
    if target is None:
        parent = os.path.dirname(location)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(location, "w", encoding="utf-8") as f:
            f.write(text)
        return
    if s3_client is None:
        s3_client = _default_s3_client()
    bucket, key = target
    s3_client.put_object(
        Bucket=bucket,
        Key=key,
        Body=text.encode("utf-8"),
        ContentType=content_type,
    )


def read_text(location: str, s3_client=None) -> Optional[str]:
    """Contents of an artifact. Returns None if it does not exist."""
    target = split_s3_uri(location)
    if target is None:
        try:
            with open(location, "r", encoding="utf-8") as f:
                return f.read()
        except FileNotFoundError:
            return None
    if s3_client is None:
        s3_client = _default_s3_client()
    bucket, key = target
    try:
        response = s3_client.get_object(Bucket=bucket, Key=key)
        return response["Body"].read().decode("utf-8")
    except ClientError as e:
        error_code = e.response.get("Error", {}).get("Code", "")
        if error_code in ("NoSuchKey", "404"):
            return None
        raise


def write_json(location: str, data: Any, s3_client=None) -> None:
    write_text(location, dumps_json(data), s3_client=s3_client)


def read_json(location: str, s3_client=None) -> Optional[Any]:
    """Parsed JSON artifact, or None when absent; malformed text raises ``json.JSONDecodeError``."""
    text = read_text(location, s3_client=s3_client)
    return None if text is None else json.loads(text)
