"""
Django settings for the polar-spinors project.

The project has no web surface and no database: Django provides the
application registry, the settings layer and the management-command CLI.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os
import environ

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Initialize environment variables
env = environ.Env(
    SPINOR_REPORT_DIR=(str, ''),
)

# Read .env file if present (do not override existing env vars)
environ.Env.read_env(os.path.join(BASE_DIR, '.env'), override=False)


# Nothing is signed or stored; Django still requires a value.
SECRET_KEY = 'polar-spinors-cli'

DEBUG = False

ALLOWED_HOSTS: list[str] = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'spinor',
]

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'COERCE_DECIMAL_TO_STRING': False,
}

DATABASES: dict = {}


# Numerical defaults for the spinor CLI. Every value can be overridden per
# run with the matching command-line flag.

SPINOR = {
    'TOL_CLASS': 1e-9,
    'TOL_RESIDUAL': 1e-10,
    'TOL_DERIVATIVE': 1e-6,
    'FD_STEP': 1e-4,
    # Reports are written here when --output is a bare file name.
    'REPORT_DIR': env.str('SPINOR_REPORT_DIR'),
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Minimal logging config (logs to stderr)
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'INFO' if not DEBUG else 'DEBUG',
    },
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
