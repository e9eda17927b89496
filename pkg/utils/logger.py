import logging
import logging.handlers
import os
from pathlib import Path
from typing import Optional

import structlog


class ZeroSumLabLogger:
    """Centralized logging configuration for zslab"""

    def __init__(self, log_dir: Optional[str] = None):
        if log_dir is None:
            log_dir = os.getenv("ZSLAB_LOG_DIR", "logs")
        self.log_dir = Path(log_dir) if log_dir else None
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
        self.setup_logging()

    def setup_logging(self):
        """Setup console, rotating file and execution logging"""

        detailed_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
        )
        simple_formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - %(message)s'
        )

        root_logger = logging.getLogger()
        root_logger.setLevel(logging.INFO)

        # Clear existing handlers
        for handler in root_logger.handlers[:]:
            root_logger.removeHandler(handler)

        # Console handler goes to stderr; stdout is reserved for reports
        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(simple_formatter)
        root_logger.addHandler(console_handler)

        execution_logger = logging.getLogger('execution')
        execution_logger.setLevel(logging.INFO)
        execution_logger.propagate = False
        for handler in execution_logger.handlers[:]:
            execution_logger.removeHandler(handler)

        if self.log_dir is not None:
            app_handler = logging.handlers.RotatingFileHandler(
                self.log_dir / 'application.log', maxBytes=10*1024*1024, backupCount=5
            )
            app_handler.setLevel(logging.DEBUG)
            app_handler.setFormatter(detailed_formatter)
            root_logger.addHandler(app_handler)

            error_handler = logging.handlers.RotatingFileHandler(
                self.log_dir / 'errors.log', maxBytes=5*1024*1024, backupCount=3
            )
            error_handler.setLevel(logging.ERROR)
            error_handler.setFormatter(detailed_formatter)
            root_logger.addHandler(error_handler)

            # Search runs, one JSON event per line
            execution_handler = logging.handlers.RotatingFileHandler(
                self.log_dir / 'executions.log', maxBytes=10*1024*1024, backupCount=5
            )
            execution_handler.setLevel(logging.INFO)
            execution_handler.setFormatter(logging.Formatter('%(message)s'))
            execution_logger.addHandler(execution_handler)
        else:
            execution_logger.addHandler(logging.NullHandler())

        structlog.configure(
            processors=[
                structlog.stdlib.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.JSONRenderer(sort_keys=True),
            ],
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=False,
        )

    def get_logger(self, name: str = None):
        """Get a logger instance"""
        return logging.getLogger(name or __name__)

    def get_execution_logger(self):
        """Get the structured execution logger"""
        return structlog.get_logger('execution')


# Initialize logging system
_logging_system = ZeroSumLabLogger()


def get_logger(name: str = None):
    """Get a logger instance"""
    return _logging_system.get_logger(name)


def get_execution_logger():
    """Get the structured execution logger"""
    return _logging_system.get_execution_logger()


logger = get_logger(__name__)
