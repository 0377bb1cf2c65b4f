import pytest
import math
import sys
import os

# Add the src directory to the path to import logdiv
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import logdiv as ld
from logdiv.analyzer import AnalysisOptions, LogDiv
from logdiv.functions._bfunction import bfunction_via_theta, lct_threshold, verify_functional_equation
from logdiv.functions._classify import classify
from logdiv.functions._connections import ILCData, b_twist
from logdiv.functions._rees_kernel import rees_kernel, theta_in_rees_kernel
from logdiv.functions._spencer import SpencerSpec, build_spencer, is_exact, specialize_and_check


class TestLogDivIntegration:
    """Integration tests for the complete LogDiv workflow."""

    def test_complete_workflow_normal_crossing(self):
        """Test classification, b-function, Spencer complex and specialization on xy."""
        options = AnalysisOptions(weight_bound=2, order_bound=2)
        report = (ld("x*y", ["x", "y"], options)
                  .classify()
                  .bfunction()
                  .connection(0)
                  .spencer()
                  .specialize()
                  .to_report())

        flags = report["classification"]
        assert flags["free"] and flags["koszul_free"] and flags["linear_jacobian_type"]
        assert report["bfunction"]["polynomial"] == "s^2 + 2*s + 1"
        assert report["bfunction"]["threshold"] == 1
        assert report["spencer"]["exact"] is True
        assert [r["k"] for r in report["specialization"]] == [1, 2, 3]
        assert all(r["all_equal"] for r in report["specialization"])

    def test_linear_jacobian_type_matches_theta(self, cusp, cusp_basis):
        """Test that the cusp is of linear Jacobian type and its theta symbols lie in the Rees kernel."""
        assert classify(cusp).linear_jacobian_type
        assert rees_kernel(cusp)
        assert theta_in_rees_kernel(cusp, cusp_basis)

    def test_certificate_checks_out(self, normal_crossing, normal_crossing_basis):
        """Test that the returned operator satisfies the functional equation."""
        b = bfunction_via_theta(normal_crossing, normal_crossing_basis)
        assert b.certificate is not None
        assert verify_functional_equation(normal_crossing.f, b, b.certificate)

    def test_twisted_threshold_drives_specialization(self, smooth, smooth_basis):
        """Test that O(D) on x moves the threshold below zero and every k >= 0 is promised."""
        b = bfunction_via_theta(smooth, smooth_basis)
        threshold = lct_threshold(b_twist(b, 1))
        assert threshold == -math.inf
        tc = build_spencer(SpencerSpec(smooth_basis, ilc=ILCData.line_bundle(smooth_basis, 1),
                                       weight_bound=2, order_bound=2))
        assert is_exact(tc)
        report = specialize_and_check(tc, 0, threshold)
        assert report.promised
        assert report.all_equal

    def test_facade_default_ks_for_twist(self):
        """Test that the facade starts specialization at the twisted threshold."""
        options = AnalysisOptions(weight_bound=2, order_bound=2)
        report = LogDiv("x", options=options).connection(1).spencer().specialize().to_report()
        assert [r["k"] for r in report["specialization"]] == [0, 1, 2]

    def test_command_line_matches_facade(self, tmp_path):
        """Test that the classify command reports what the facade computes."""
        import json
        from logdiv.cli import main
        path = tmp_path / "report.json"
        assert main(["classify", "x^2 - y^3", "--vars", "x,y", "--json", str(path)]) == 0
        with open(path, "r", encoding="utf-8") as handle:
            body = json.load(handle)["body"]
        expected = json.loads(json.dumps(LogDiv("x^2 - y^3", ["x", "y"]).classify().to_report()))
        assert body["result"]["classification"] == expected["classification"]
