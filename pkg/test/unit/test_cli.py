"""Module for testing the command line interface"""
import json
import os

from io import StringIO
from unittest import TestCase

from mock import patch

from cliffweil.cli import main, render_text
from cliffweil.codes import named_code
from cliffweil.poly import SparsePoly, cwe
from test.helpers import write_json


class TestCli(TestCase):
    """Class for testing cliffweil.cli.main"""

    def setUp(self):
        patchers = [
            patch("cliffweil.cli.fileConfig"),
            patch.dict(os.environ, {"CLIFFWEIL_WORKERS": "1"}, clear=True),
            patch.object(SparsePoly, "term_cap", SparsePoly.term_cap),
        ]
        for patcher in patchers:
            patcher.start()
            self.addCleanup(patcher.stop)
        self.paths = []

    def tearDown(self):
        for path in self.paths:
            os.remove(path)

    def _input(self, payload):
        path = write_json(payload)
        self.paths.append(path)
        return path

    def _run(self, argv):
        with patch("sys.stdout", new_callable=StringIO) as stdout:
            status = main(argv)
        return status, stdout.getvalue()

    def test_field_info(self):
        """ Test that field info reports the pinned basis of F4 """
        status, output = self._run(["field", "info", "--field", "F4"])

        payload = json.loads(output)
        self.assertEqual(0, status)
        self.assertEqual([2, 3], payload["sc_basis"])
        self.assertEqual([0, 2, 1, 1], payload["phi"])
        self.assertEqual("cliffweil/1", payload["schema"])

    def test_code_qr(self):
        """ Test that the QR construction is printed as a code """
        status, output = self._run(["code", "qr", "--field", "F4", "--p", "3"])

        self.assertEqual(0, status)
        self.assertEqual(4, json.loads(output)["n"])

    def test_code_check(self):
        """ Test the self-duality report of a code read from a file """
        path = self._input(named_code("Q4").to_dict())

        status, output = self._run(["code", "check", "--input", path])

        payload = json.loads(output)
        self.assertEqual(0, status)
        self.assertTrue(payload["self_dual"])
        self.assertTrue(payload["doubly_even"])

    def test_code_check_doubly_even(self):
        """ Test that --doubly-even reports only the doubly-even flag """
        path = self._input(named_code("Q4").to_dict())

        status, output = self._run(["code", "check", "--doubly-even", "--input", path])

        self.assertEqual(0, status)
        self.assertEqual({"doubly_even": True, "schema": "cliffweil/1"}, json.loads(output))

    def test_hamming(self):
        """ Test the Hamming specialization of an enumerator read from a file """
        path = self._input(cwe(named_code("Q4")).to_dict())

        status, output = self._run(["cwe", "hamming", "--input", path])

        self.assertEqual(0, status)
        self.assertEqual(["1", "0", "0", "12", "3"], json.loads(output)["coeffs"])

    def test_group_order(self):
        """ Test the order of the group over F2 """
        status, output = self._run(["group", "order", "--field", "F2"])

        self.assertEqual(0, status)
        self.assertEqual(192, json.loads(output)["order"])

    def test_extremal(self):
        """ Test that an infeasible extremal search still exits with 0 """
        status, output = self._run(["inv", "extremal", "--n", "4", "--d", "4"])

        self.assertEqual(0, status)
        self.assertFalse(json.loads(output)["feasible"])

    def test_text_format(self):
        """ Test plain text output """
        status, output = self._run(["--format", "text", "group", "order", "--field", "F2"])

        self.assertEqual(0, status)
        self.assertIn("order: 192", output)

    def test_budget_exceeded(self):
        """ Test that exceeding a budget exits with 3 """
        status, _ = self._run(["--budget", "degree_cap:8", "inv", "basis", "--degree", "12"])

        self.assertEqual(3, status)

    def test_table_degree_cap(self):
        """ Test that the degree cap also bounds the extremal searches of the table """
        status, _ = self._run(["--budget", "degree_cap:8", "inv", "table"])

        self.assertEqual(3, status)

    def test_basis_reynolds(self):
        """ Test that --reynolds adds the Reynolds cross-check to the basis report """
        status, output = self._run(["inv", "basis", "--field", "F2", "--degree", "8", "--reynolds"])

        payload = json.loads(output)
        self.assertEqual(0, status)
        self.assertEqual(1, payload["dimension"])
        self.assertTrue(payload["reynolds"]["agrees"])
        self.assertEqual(1, payload["reynolds"]["reynolds_rank"])

    def test_invalid_budget(self):
        """ Test that an unknown budget exits with 2 """
        status, output = self._run(["--budget", "memory:1", "field", "info"])

        self.assertEqual(2, status)
        self.assertEqual("", output)

    def test_invalid_field(self):
        """ Test that an invalid field name exits with 2 """
        status, _ = self._run(["field", "info", "--field", "F6"])

        self.assertEqual(2, status)

    def test_missing_input(self):
        """ Test that an unreadable input file exits with 2 """
        status, _ = self._run(["code", "check", "--input", "/nonexistent/code.json"])

        self.assertEqual(2, status)

    def test_domain_error(self):
        """ Test that a failing construction exits with 1 """
        status, _ = self._run(["code", "qr", "--field", "F2", "--p", "3"])

        self.assertEqual(1, status)

    def test_missing_command(self):
        """ Test that argparse rejects a missing subcommand """
        with patch("sys.stderr", new_callable=StringIO):
            with self.assertRaises(SystemExit):
                main([])

    @patch("cliffweil.cli.write_reports")
    @patch("cliffweil.cli.Reproduction")
    def test_reproduce_failure(self, mock_reproduction, mock_write_reports):
        """ Test that a failing criterion exits with 1 and reports are written to the output dir """
        mock_reproduction.return_value.run.return_value = [
            {"criterion": "table", "passed": True, "details": {}},
            {"criterion": "p40", "passed": False, "details": {}},
        ]

        status, output = self._run(["reproduce", "--only", "molien", "--output-dir", "out"])

        self.assertEqual(1, status)
        self.assertEqual("p40", json.loads(output)["first_failure"])
        self.assertEqual(["molien"], mock_reproduction.call_args[1]["only_tags"])
        self.assertEqual("out", mock_write_reports.call_args[0][1])

    @patch("cliffweil.cli.write_reports")
    @patch("cliffweil.cli.Reproduction")
    def test_reproduce_success(self, mock_reproduction, mock_write_reports):
        """ Test that a passing run exits with 0 and writes nothing without an output dir """
        result = {"criterion": "table", "passed": True, "details": {}}
        mock_reproduction.return_value.run.return_value = [result]

        status, _ = self._run(["reproduce"])

        self.assertEqual(0, status)
        mock_write_reports.assert_not_called()

    def test_render_text(self):
        """ Test that nested dictionaries are indented """
        self.assertEqual("a: 1\nb:\n  c: [1, 2]", render_text({"b": {"c": [1, 2]}, "a": 1}))
