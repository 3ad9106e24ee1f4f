"""Module for testing the run configuration"""
from unittest import TestCase

from cliffweil.config import (
    DEFAULT_CODEWORD_BUDGET,
    RunConfig,
    budget_overrides,
    budget_tags_to_dict,
    group_cap_for,
    load_run_config,
)
from cliffweil.exceptions import ConfigurationException


class TestBudgetTags(TestCase):
    """Class for testing key:value budget tags"""

    def test_tags_to_dict(self):
        """ Test that budget tags are split on the first colon """
        self.assertEqual({"codewords": "65536", "group_cap": "10"},
                         budget_tags_to_dict(["codewords:65536", " group_cap:10 ", ""]))
        self.assertEqual({}, budget_tags_to_dict(None))

    def test_malformed_tag(self):
        """ Test that a tag without a colon is rejected """
        with self.assertRaises(ConfigurationException):
            budget_tags_to_dict(["codewords"])

    def test_overrides(self):
        """ Test that tags map to RunConfig attributes with integer values """
        self.assertEqual({"codeword_budget": 1024, "degree_cap": 24},
                         budget_overrides(["codewords:1024", "degree_cap:24"]))

    def test_unknown_budget(self):
        """ Test that unknown budget names are rejected """
        with self.assertRaises(ConfigurationException):
            budget_overrides(["memory:12"])

    def test_non_positive_budget(self):
        """ Test that budgets must be positive integers """
        for tag in ("codewords:0", "codewords:-3", "codewords:many"):
            with self.assertRaises(ConfigurationException):
                budget_overrides([tag])


class TestRunConfig(TestCase):
    """Class for testing RunConfig and load_run_config"""

    def test_defaults(self):
        """ Test the default configuration """
        config = load_run_config({})

        self.assertEqual("json", config.output_format)
        self.assertEqual(DEFAULT_CODEWORD_BUDGET, config.codeword_budget)
        self.assertIsNone(config.group_cap)
        self.assertTrue(config.workers >= 1)

    def test_environment(self):
        """ Test that CLIFFWEIL_* variables are read """
        config = load_run_config({
            "CLIFFWEIL_BUDGETS": "codewords:4096,group_cap:500",
            "CLIFFWEIL_WORKERS": "3",
            "CLIFFWEIL_FORMAT": "text",
        })

        self.assertEqual(4096, config.codeword_budget)
        self.assertEqual(500, config.group_cap_for(3))
        self.assertEqual(3, config.workers)
        self.assertEqual("text", config.output_format)

    def test_overrides_beat_environment(self):
        """ Test that explicit overrides win and None overrides are ignored """
        config = load_run_config({"CLIFFWEIL_WORKERS": "3", "CLIFFWEIL_FORMAT": "text"},
                                 {"workers": 5, "output_format": None})

        self.assertEqual(5, config.workers)
        self.assertEqual("text", config.output_format)

    def test_bad_environment(self):
        """ Test that malformed environment values raise ConfigurationException """
        for environ in ({"CLIFFWEIL_WORKERS": "zero"}, {"CLIFFWEIL_FORMAT": "xml"},
                        {"CLIFFWEIL_BUDGETS": "codewords"}):
            with self.assertRaises(ConfigurationException):
                load_run_config(environ)

    def test_group_caps(self):
        """ Test the per-field closure caps """
        self.assertEqual(10 ** 4, group_cap_for(2))
        self.assertEqual(3 * 10 ** 5, group_cap_for(3))
        self.assertEqual(3 * 10 ** 5, RunConfig(workers=1).group_cap_for(3))

    def test_as_dict(self):
        """ Test the dictionary view """
        data = RunConfig(workers=2, output_dir="out").as_dict()

        self.assertEqual(2, data["workers"])
        self.assertEqual("out", data["output_dir"])
        self.assertEqual(7, len(data))
