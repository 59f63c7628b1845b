import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional
from datetime import datetime
import inspect

PACKAGE_NAME = "twolayer_swe"


@dataclass
class LoggerConfig:
    """
    Singleton logger configuration that reads the debug settings from the
    environment and tags every record with the solver component that issued it.
    """

    # Environment variable names
    ENV_DEBUG_ENABLED = "TWOLAYER_DEBUG_ENABLED"
    ENV_DEBUG_LEVEL = "TWOLAYER_DEBUG_LEVEL"
    ENV_DEBUG_LOCATION = "TWOLAYER_DEBUG_LOCATION"

    # Default values
    DEFAULT_ENABLED = "No"
    DEFAULT_LEVEL = "WARNING"
    DEFAULT_LOCATION = str(Path.home() / "twolayer_swe_logs")

    VALID_LOG_LEVELS = {
        "DEBUG",
        "INFO",
        "WARNING",
        "ERROR",
        "CRITICAL"
    }

    # Singleton instance
    _instance = None
    _logger = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(LoggerConfig, cls).__new__(cls)
            cls._instance._initialize()
        return cls._instance

    def _initialize(self):
        """Read the environment and attach a file handler when debugging is on."""
        self.debug_enabled = os.getenv(self.ENV_DEBUG_ENABLED, self.DEFAULT_ENABLED).upper() == "YES"
        self.debug_level = os.getenv(self.ENV_DEBUG_LEVEL, self.DEFAULT_LEVEL).upper()
        if self.debug_level not in self.VALID_LOG_LEVELS:
            self.debug_level = self.DEFAULT_LEVEL

        self.debug_location = os.getenv(self.ENV_DEBUG_LOCATION, self.DEFAULT_LOCATION)
        self._logger = logging.getLogger(PACKAGE_NAME)

        if not self.debug_enabled:
            return

        log_dir = Path(self.debug_location).expanduser()
        try:
            log_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            print(f"Warning: Could not create log directory {self.debug_location}: {e}")
            log_dir = Path(self.DEFAULT_LOCATION).expanduser()
            log_dir.mkdir(parents=True, exist_ok=True)

        log_file = log_dir / f"{PACKAGE_NAME}_{datetime.now().strftime('%Y%m%d')}.log"
        handler = logging.FileHandler(str(log_file))
        handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
        self._logger.addHandler(handler)
        self._logger.setLevel(getattr(logging, self.debug_level, logging.WARNING))

    @classmethod
    def reset(cls) -> None:
        """Drop the singleton so the next call re-reads the environment."""
        if cls._instance is not None and cls._instance._logger is not None:
            for handler in list(cls._instance._logger.handlers):
                if isinstance(handler, logging.FileHandler):
                    cls._instance._logger.removeHandler(handler)
                    handler.close()
        cls._instance = None

    @staticmethod
    def _get_caller_component() -> str:
        """
        Walk up the call stack to the first frame inside the package and
        return its subpackage name (core, eigen, riemann, driver, ...).
        """
        frame = inspect.currentframe()
        try:
            while frame:
                module_name = frame.f_globals.get('__name__', '')
                parts = module_name.split('.')
                if parts[0] == PACKAGE_NAME and len(parts) > 1 and parts[1] != 'config':
                    return parts[1]
                frame = frame.f_back
            return 'unknown'
        finally:
            del frame

    @classmethod
    def log(cls, message: str, level: Optional[str] = None, **kwargs) -> None:
        """
        Log a message tagged with the calling component.

        Records go to the package logger, so they reach the debug file when
        TWOLAYER_DEBUG_ENABLED=yes and any handler the CLI installs.

        Args:
            message: The message to log
            level: The log level for this message (defaults to the configured level)
            **kwargs: Additional context rendered as key=value pairs
        """
        instance = cls()

        message_level = level.upper() if level else instance.debug_level
        if message_level not in cls.VALID_LOG_LEVELS:
            message_level = instance.debug_level

        log_level = getattr(logging, message_level)
        if not instance._logger.isEnabledFor(log_level):
            return

        component = cls._get_caller_component()
        log_parts = [f"[{component}]", message]

        if kwargs:
            context = ' '.join(f"{k}={v}" for k, v in kwargs.items())
            log_parts.append(f"- {context}")

        instance._logger.log(log_level, ' '.join(log_parts))

