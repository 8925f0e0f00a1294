"""
Django settings for mrd_toolkit project.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-change-this-in-production')

DEBUG = os.getenv('DEBUG', 'True') == 'True'

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',

    # Third-party apps
    'rest_framework',

    # Local apps
    'gf.apps.GfConfig',
    'linpoly.apps.LinpolyConfig',
    'codes.apps.CodesConfig',
    'curves.apps.CurvesConfig',
    'runs.apps.RunsConfig',
]

# Database (run checkpoints and stored reports)
DATABASES = {
    'default': {
        'ENGINE': os.getenv('DB_ENGINE', 'django.db.backends.sqlite3'),
        'NAME': os.getenv('DB_NAME', BASE_DIR / 'db.sqlite3'),
        'USER': os.getenv('DB_USER', ''),
        'PASSWORD': os.getenv('DB_PASSWORD', ''),
        'HOST': os.getenv('DB_HOST', ''),
        'PORT': os.getenv('DB_PORT', ''),
    }
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework Configuration (serializers only validate specs here)
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
}

# Toolkit budgets and paths
TOOLKIT = {
    'ENUMERATION_BUDGET': int(os.getenv('MRD_ENUMERATION_BUDGET', 10 ** 7)),
    'FIELD_SIZE_BUDGET': int(os.getenv('MRD_FIELD_SIZE_BUDGET', 10 ** 6)),
    'WORKERS': int(os.getenv('MRD_WORKERS', 1)),
    'CHUNK_SIZE': int(os.getenv('MRD_CHUNK_SIZE', 2 ** 16)),
    'MAX_EXPONENT': int(os.getenv('MRD_MAX_EXPONENT', 2 ** 20)),
    'REPORT_DIR': Path(os.getenv('MRD_REPORT_DIR', BASE_DIR / 'reports')),
}

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'keyvalue': {
            'format': 'ts={asctime} level={levelname} logger={name} msg="{message}"',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'keyvalue',
        },
    },
    'loggers': {
        'toolkit': {
            'handlers': ['console'],
            'level': os.getenv('MRD_LOG_LEVEL', 'INFO'),
        },
        **{
            app: {
                'handlers': ['console'],
                'level': os.getenv('MRD_LOG_LEVEL', 'INFO'),
            }
            for app in ('gf', 'linpoly', 'codes', 'curves', 'runs')
        },
    },
}
