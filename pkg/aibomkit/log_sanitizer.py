"""
Log sanitizer module for removing contact and credential data from logs.

AI BOMs name the people and organizations that built, supplied and tested a
system, often with e-mail addresses or phone numbers in their external
identifiers, and download locations sometimes embed credentials. This module
provides:
- A sanitizer with patterns for detecting and masking that information
- A logging formatter that applies the sanitizer to every record
- The logging setup used by the command-line tool (stderr only)
"""

import logging
import re
import sys
from typing import Dict, Pattern, Union


class SensitiveDataSanitizer:
    """Handles sanitization of sensitive data in log messages."""

    def __init__(self):
        """Initialize sanitizer with patterns for sensitive data detection."""
        self.patterns: Dict[str, Pattern] = {
            'url_credentials': re.compile(r'://[^/\s:@]+:[^/\s@]+@'),
            'mailto': re.compile(r'mailto:[^\s"\',\]]+', re.IGNORECASE),
            'email': re.compile(r'\b[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,}\b'),
            'bearer_token': re.compile(r'Bearer\s+[A-Za-z0-9\-._~+/]+=*', re.IGNORECASE),
            'api_key': re.compile(r'(?i)\b(api[_-]?key|token|secret|password)(["\'\s]*[:=]["\'\s]*)([^\s"\']+)'),
            'phone': re.compile(r'(?<![\w.-])\+?\d{1,3}[ .-]\(?\d{2,4}\)?[ .-]\d{3,4}[ .-]?\d{3,4}\b'),
            'tel_uri': re.compile(r'tel:\+?[\d\-.() ]+', re.IGNORECASE),
        }

        self.replacements: Dict[str, str] = {
            'url_credentials': '://[CREDENTIALS_REDACTED]@',
            'mailto': 'mailto:[EMAIL_REDACTED]',
            'email': '[EMAIL_REDACTED]',
            'bearer_token': 'Bearer [TOKEN_REDACTED]',
            'api_key': r'\1\2[API_KEY_REDACTED]',
            'phone': '[PHONE_REDACTED]',
            'tel_uri': 'tel:[PHONE_REDACTED]',
        }

    def sanitize(self, message: str) -> str:
        """
        Sanitize a log message by replacing sensitive data with placeholders.

        Args:
            message: The log message to sanitize

        Returns:
            The sanitized log message
        """
        sanitized = message

        for pattern_name, pattern in self.patterns.items():
            replacement = self.replacements.get(pattern_name, '[REDACTED]')
            sanitized = pattern.sub(replacement, sanitized)

        return sanitized


class SanitizingFormatter(logging.Formatter):
    """Custom logging formatter that sanitizes sensitive data."""

    def __init__(self, *args, **kwargs):
        """Initialize the formatter with sanitizer."""
        super().__init__(*args, **kwargs)
        self.sanitizer = SensitiveDataSanitizer()

    def format(self, record: logging.LogRecord) -> str:
        """Format log record and sanitize sensitive data."""
        formatted = super().format(record)
        return self.sanitizer.sanitize(formatted)


def setup_sanitized_logging(level: Union[int, str] = logging.WARNING):
    """
    Set up logging with sanitization.

    Tool diagnostics go to stderr so that command output on stdout stays
    machine-parseable.

    Args:
        level: Logging level name or number for the root logger
    """
    root = logging.getLogger()
    root.handlers.clear()

    formatter = SanitizingFormatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)

    root.addHandler(console_handler)
    root.setLevel(level)
