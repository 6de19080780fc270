#!/usr/bin/env python3
"""Independent re-hash of an exported SFC audit log.

Recomputes the whole hash chain from the file bytes using only the Python
standard library:

    hash = SHA-256(prev_hash_hex || canonical_json({kind, payload, seq}))

with event 0 anchored at SHA-256("SFC-GENESIS"). Prints the head hash and
exits 0 when every link verifies, 1 otherwise.
"""

import hashlib
import json
import sys


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def main(path: str) -> int:
    prev = hashlib.sha256(b"SFC-GENESIS").hexdigest()
    expected_seq = 0
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw:
        if not raw.endswith(b"\n"):
            print("FAIL: truncated final line", file=sys.stderr)
            return 1
        for lineno, line in enumerate(raw[:-1].split(b"\n")):
            try:
                event = json.loads(line)
            except ValueError:
                print(f"FAIL: line {lineno} is not valid JSON", file=sys.stderr)
                return 1
            if set(event) != {"hash", "kind", "payload", "prev_hash", "seq"}:
                print(f"FAIL: line {lineno} has unexpected fields", file=sys.stderr)
                return 1
            if canonical(event).encode() != line:
                print(f"FAIL: line {lineno} is not canonical", file=sys.stderr)
                return 1
            if event["seq"] != expected_seq:
                print(f"FAIL: line {lineno} breaks seq continuity", file=sys.stderr)
                return 1
            if event["prev_hash"] != prev:
                print(f"FAIL: line {lineno} does not chain", file=sys.stderr)
                return 1
            preimage = event["prev_hash"] + canonical(
                {"kind": event["kind"], "payload": event["payload"], "seq": event["seq"]}
            )
            recomputed = hashlib.sha256(preimage.encode()).hexdigest()
            if recomputed != event["hash"]:
                print(f"FAIL: line {lineno} hash mismatch", file=sys.stderr)
                return 1
            prev = event["hash"]
            expected_seq += 1
    print(prev)
    return 0


if __name__ == "__main__":
    if len(sys.argv) != 2:
        print(f"usage: {sys.argv[0]} LOG.ndjson", file=sys.stderr)
        sys.exit(2)
    sys.exit(main(sys.argv[1]))
