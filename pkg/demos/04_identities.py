#!/usr/bin/env python3
"""Run every identity suite on every preset action.

Run:  python3 demos/04_identities.py [max_weight]
"""
import sys
import time

from mfchains import parse_action
from mfchains.oracles import check_identity

SPECS = ["un:n=3", "torus:n=3", "symtorus:n=3", "symc:m=2", "matc:m=2", "skewc:m=2",
         "sphere:n=5", "jack:r=3,theta=1/3"]

max_weight = int(sys.argv[1]) if len(sys.argv) > 1 else 4
for name in SPECS:
    action = parse_action(name)
    start = time.perf_counter()
    report = check_identity("all", action, max_weight)
    status = "PASS" if report.passed else "FAIL"
    print(f"{name:20} {status}  {len(report.instances):6d} checks  {time.perf_counter() - start:5.2f}s")
