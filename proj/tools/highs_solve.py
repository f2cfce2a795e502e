#!/usr/bin/env python3
# Copyright 2026 The ebsched Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Solve an LP/MPS model with HiGHS and write a name-value solution file."""

import argparse
import math
import sys

import highspy


def status_name(h, status):
    M = highspy.HighsModelStatus
    if status == M.kOptimal:
        return "optimal"
    if status in (M.kInfeasible, M.kUnboundedOrInfeasible):
        return "infeasible"
    if status == M.kUnbounded:
        return "unbounded"
    if status == M.kTimeLimit:
        return "time-limit"
    return "unknown"


def fmt(v):
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(float(v))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("model")
    p.add_argument("solution")
    p.add_argument("--time-limit", type=float, default=600.0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--mip-gap", type=float, default=1e-9)
    p.add_argument("--quiet", action="store_true")
    args = p.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", not args.quiet)
    h.setOptionValue("time_limit", max(0.0, args.time_limit))
    h.setOptionValue("threads", max(1, args.threads))
    h.setOptionValue("mip_rel_gap", args.mip_gap)
    h.setOptionValue("mip_abs_gap", 1e-9)
    if h.readModel(args.model) == highspy.HighsStatus.kError:
        print(f"cannot read model {args.model}", file=sys.stderr)
        return 2
    h.run()

    status = h.getModelStatus()
    info = h.getInfo()
    lp = h.getLp()
    is_mip = any(t != highspy.HighsVarType.kContinuous for t in lp.integrality_)
    has_solution = info.primal_solution_status == 2
    with open(args.solution, "w") as out:
        out.write(f"status {status_name(h, status)}\n")
        if has_solution:
            out.write(f"objective {fmt(info.objective_function_value)}\n")
        if is_mip:
            bound = info.mip_dual_bound
            if not math.isinf(bound):
                out.write(f"bound {fmt(bound)}\n")
        elif status == highspy.HighsModelStatus.kOptimal:
            out.write(f"bound {fmt(info.objective_function_value)}\n")
        if has_solution:
            values = h.getSolution().col_value
            for name, v in zip(lp.col_names_, values):
                out.write(f"{name} {fmt(v)}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
