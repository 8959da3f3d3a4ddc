__lib_name__ = 'bvalue'
__version__ = '0.1.0a0'
__author__ = 'bvalue developers'
__email__ = ''
