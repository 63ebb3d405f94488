import json
import logging
import os
import tempfile
import unittest
from unittest import mock

from config.config_validator import ConfigValidator
from erasure.config_manager import ConfigManager, ErasureConfig
from erasure.performance_monitor import PerformanceTracker, monitor_performance
from utils import ERROR_MESSAGES, get_app_info, get_error_message, setup_logging


class TestConfigValidator(unittest.TestCase):

    def setUp(self):
        self.validator = ConfigValidator()

    def test_default_is_valid(self):
        result = self.validator.validate_config(self.validator.get_default_config())
        self.assertTrue(result['valid'])
        self.assertEqual(result['issues'], [])

    def test_detects_issues(self):
        config = self.validator.get_default_config()
        config['verifier']['jobs'] = -1
        config['logging']['level'] = 'LOUD'
        result = self.validator.validate_config(config)
        self.assertFalse(result['valid'])
        self.assertEqual({issue['field'] for issue in result['issues']},
                         {'verifier.jobs', 'logging.level'})

    def test_fix_clamps_and_defaults(self):
        config = {
            'verifier': {'jobs': -3, 'partitions_per_job': 1000},
            'search': {'default_restarts': 'many'},
            'logging': {'level': 'LOUD', 'log_file': None}
        }
        with self.assertLogs('config.config_validator', level='WARNING'):
            fixed = self.validator.fix_config_issues(config)
        self.assertEqual(fixed['verifier']['jobs'], 0)
        self.assertEqual(fixed['verifier']['partitions_per_job'], 64)
        self.assertEqual(fixed['search']['default_restarts'], 20)
        self.assertEqual(fixed['logging']['level'], 'INFO')
        self.assertEqual(fixed['decoder']['max_stopping_set_length'], 20)

    def test_bool_is_not_int(self):
        config = self.validator.get_default_config()
        config['search']['default_seed'] = True
        self.assertFalse(self.validator.validate_config(config)['valid'])


class TestConfigManager(unittest.TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.manager = ConfigManager(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def test_missing_file_uses_defaults(self):
        config = self.manager.load_config()
        self.assertEqual(config, ErasureConfig())
        self.assertFalse(os.path.exists(self.manager.config_file))

    def test_save_and_reload(self):
        config = self.manager.load_config()
        config.search.default_seed = 7
        self.assertTrue(self.manager.save_config(config))
        reloaded = ConfigManager(self._tmp.name).load_config()
        self.assertEqual(reloaded.search.default_seed, 7)

    def test_invalid_values_repaired(self):
        with open(self.manager.config_file, 'w', encoding='utf-8') as f:
            json.dump({'verifier': {'jobs': -5}, 'decoder': {'max_stopping_set_length': 99}}, f)
        config = self.manager.load_config()
        self.assertEqual(config.verifier.jobs, 0)
        self.assertEqual(config.decoder.max_stopping_set_length, 24)

    def test_broken_json(self):
        with open(self.manager.config_file, 'w', encoding='utf-8') as f:
            f.write("{not json")
        with mock.patch.object(self.manager, 'reset_to_default',
                               wraps=self.manager.reset_to_default) as reset:
            self.assertEqual(self.manager.load_config(), ErasureConfig())
        reset.assert_called_once_with()

    def test_update_and_reset(self):
        config = self.manager.update_config(verifier={'jobs': 3}, research={'max_min_size_r': 3})
        self.assertEqual(config.verifier.jobs, 3)
        self.assertEqual(config.research.max_min_size_r, 3)
        self.assertEqual(self.manager.reset_to_default().verifier.jobs, 0)

    def test_export_import(self):
        self.manager.update_config(search={'default_restarts': 5})
        path = os.path.join(self._tmp.name, 'exported.json')
        self.assertTrue(self.manager.export_config(path))
        other = ConfigManager(os.path.join(self._tmp.name, 'other'))
        self.assertEqual(other.import_config(path).search.default_restarts, 5)

    def test_shipped_config_file(self):
        shipped = ConfigManager().load_config()
        self.assertEqual(shipped.verifier.parallel_threshold, 20000)
        self.assertEqual(shipped.research.max_min_size_r, 4)


class TestAmbient(unittest.TestCase):

    def test_monitor_performance(self):
        @monitor_performance(track_memory=True)
        def add(a, b):
            return a + b

        with self.assertLogs('erasure.performance_monitor', level='INFO') as logs:
            self.assertEqual(add(2, 3), 5)
        self.assertIn('add', logs.output[0])

    def test_monitor_performance_reraises(self):
        @monitor_performance()
        def broken():
            raise ValueError("boom")

        with self.assertLogs('erasure.performance_monitor', level='ERROR'):
            with self.assertRaises(ValueError):
                broken()

    def test_tracker(self):
        with self.assertRaises(RuntimeError):
            PerformanceTracker("idle").stop()
        self.assertGreaterEqual(PerformanceTracker("busy").start().stop(), 0.0)

    def test_error_messages(self):
        self.assertEqual(get_error_message('format'), ERROR_MESSAGES['format'])
        self.assertEqual(get_error_message('nope'), ERROR_MESSAGES['unknown_error'])
        self.assertEqual(get_app_info()['name'], 'erasure_sets')

    def test_setup_logging_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            log_file = os.path.join(tmp, 'logs', 'run.log')
            setup_logging('DEBUG', log_file)
            logging.getLogger('erasure_sets').info("hello")
            for handler in logging.getLogger().handlers:
                handler.flush()
            with open(log_file, encoding='utf-8') as f:
                self.assertIn("hello", f.read())
            setup_logging(logging.WARNING)


if __name__ == '__main__':
    unittest.main()
