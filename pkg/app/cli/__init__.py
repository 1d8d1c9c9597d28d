"""
命令行层：参数定义、输出信封与子命令实现
"""
