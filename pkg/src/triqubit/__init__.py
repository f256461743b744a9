__all__ = ['config','errors','qstate','tangles','sampling','bases','productsearch','boundstate','fileio','report','cli']
__version__ = "0.1.0"
